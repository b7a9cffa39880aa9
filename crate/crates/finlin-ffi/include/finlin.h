#ifndef FINLIN_H
#define FINLIN_H

/* generated by cbindgen from finlin-ffi; do not edit by hand */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes mirroring the CLI exit-code contract, plus argument errors.
#define FINLIN_PASS 0

#define FINLIN_FAIL 1

#define FINLIN_INCONCLUSIVE 2

#define FINLIN_INPUT_ERROR 3

#define FINLIN_NULL_ARGUMENT 4

// Opaque parsed-document handle.
typedef struct FinlinDocument FinlinDocument;

// Opaque report handle.
typedef struct FinlinReport FinlinReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the most recent error on this thread, or NULL.
// The returned string must be freed with `finlin_string_free`.
char *finlin_last_error(void);

// Frees a string allocated by this library.
//
// # Safety
// `s` must have been returned by a finlin function and not freed before.
void finlin_string_free(char *s);

// Parses and validates a document from a file on disk. Returns NULL on
// failure; consult `finlin_last_error`.
//
// # Safety
// `path` must be a valid NUL-terminated UTF-8 string.
struct FinlinDocument *finlin_document_parse(const char *path);

// The document kind: "algebra", "module", "bimodule", "hopf", "diagram"
// or "suite". Free with `finlin_string_free`.
//
// # Safety
// `doc` must be a live handle from `finlin_document_parse`.
char *finlin_document_kind(const struct FinlinDocument *doc);

// Canonical serialization of a parsed document. Free with
// `finlin_string_free`.
//
// # Safety
// `doc` must be a live handle from `finlin_document_parse`.
char *finlin_document_serialize(const struct FinlinDocument *doc);

// Releases a document handle.
//
// # Safety
// `doc` must be a handle from `finlin_document_parse`, freed at most once.
void finlin_document_free(struct FinlinDocument *doc);

// Runs a verifier command over input files.
//
// `command` is one of the CLI verbs (check, classify, nakayama, ew,
// peterweyl, radford, serre, unimodular, restriction, suite); `paths` is
// an array of `n_paths` NUL-terminated file paths in command order.
// On success `*out_report` is set and the verdict code (0 pass, 1 fail,
// 2 inconclusive) is returned. On input errors no report is produced and
// `FINLIN_INPUT_ERROR` is returned.
//
// # Safety
// `paths` must point to `n_paths` valid C strings; `out_report`, when
// non-NULL, must point to writable memory.
int32_t finlin_run(const char *command,
                   const char *const *paths,
                   uintptr_t n_paths,
                   uint64_t seed,
                   uint64_t budget,
                   struct FinlinReport **out_report);

// Verdict code of a report: 0 pass, 1 fail, 2 inconclusive.
//
// # Safety
// `report` must be a live handle from `finlin_run`.
int32_t finlin_report_verdict(const struct FinlinReport *report);

// Machine-readable JSON form of a report. Witness payloads are omitted
// when `quiet` is nonzero. Free with `finlin_string_free`.
//
// # Safety
// `report` must be a live handle from `finlin_run`.
char *finlin_report_json(const struct FinlinReport *report, int32_t quiet);

// Human-readable text form of a report. Free with `finlin_string_free`.
//
// # Safety
// `report` must be a live handle from `finlin_run`.
char *finlin_report_text(const struct FinlinReport *report);

// Re-verifies every witness certificate embedded in a report JSON string.
// Returns 0 when all certificates check out, 1 when one fails, and
// `FINLIN_INPUT_ERROR` on malformed input.
//
// # Safety
// `report_json` must be a valid NUL-terminated UTF-8 string.
int32_t finlin_report_reverify(const char *report_json);

// Releases a report handle.
//
// # Safety
// `report` must be a handle from `finlin_run`, freed at most once.
void finlin_report_free(struct FinlinReport *report);

// Library version as a static string; do not free.
const char *finlin_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FINLIN_H */
