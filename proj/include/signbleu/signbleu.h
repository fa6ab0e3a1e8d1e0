/* C API for the SignBLEU library: opaque handles over the C++ core, status
 * codes, and string results the caller frees with sb_string_free. Error
 * details for the most recent failing call on the current thread are
 * available from sb_last_error(). */

#ifndef SIGNBLEU_SIGNBLEU_H
#define SIGNBLEU_SIGNBLEU_H

#include <stddef.h>
#include <stdint.h>

#if defined(__cplusplus)
extern "C" {
#endif

typedef enum sb_status {
  SB_OK = 0,
  SB_ERROR_INVALID_ARGUMENT = 1, /* null handle or output pointer */
  SB_ERROR_CONFIG = 2,           /* bad score configuration or orders */
  SB_ERROR_DATA = 3,             /* validation, grammar, or scoring errors */
  SB_ERROR_SCHEMA = 4,           /* malformed EAF/JSON/TSV input */
  SB_ERROR_IO = 5,
  SB_ERROR_DEGENERATE = 6, /* correlation input without rank order */
  SB_ERROR_INTERNAL = 7
} sb_status;

/* Documents plus the mapping/warnings their source carried. */
typedef struct sb_docset sb_docset;
/* Tier-to-channel mapping. */
typedef struct sb_mapping sb_mapping;
/* A list of block matrices. */
typedef struct sb_blockset sb_blockset;

const char* sb_version(void);
const char* sb_status_name(sb_status status);

/* Message for the last failing call on this thread; empty when none. The
 * message is prefixed with the originating module's error code, e.g.
 * "CHANNEL_COLLISION: ...". */
const char* sb_last_error(void);

void sb_string_free(char* s);

/* ---- mapping ---- */

sb_status sb_mapping_from_json(const char* json, sb_mapping** out);
sb_status sb_mapping_to_json(const sb_mapping* mapping, char** json_out);
void sb_mapping_free(sb_mapping* mapping);

/* ---- documents ---- */

/* Loads .eaf (ELAN), a JSON document, or a JSON corpus manifest by file
 * extension and content. Relative manifest paths resolve against the file's
 * directory. */
sb_status sb_docset_from_file(const char* path, sb_docset** out);
sb_status sb_docset_from_json(const char* json, sb_docset** out);
size_t sb_docset_size(const sb_docset* docs);
/* Mapping embedded in the source manifest; SB_ERROR_DATA when none. */
sb_status sb_docset_mapping(const sb_docset* docs, sb_mapping** out);
/* Loader warnings, one per line; empty string when none. */
sb_status sb_docset_warnings(const sb_docset* docs, char** out);
/* Validation report, one violation per line; empty string when the
 * documents satisfy the mapping. */
sb_status sb_docset_validate(const sb_docset* docs, const sb_mapping* mapping,
                             char** report_out);
void sb_docset_free(sb_docset* docs);

/* ---- block matrices ---- */

sb_status sb_docset_blockify(const sb_docset* docs, const sb_mapping* mapping,
                             sb_blockset** out);
sb_status sb_blockset_from_json(const char* json, sb_blockset** out);
sb_status sb_blockset_to_json(const sb_blockset* blocks, char** json_out);
size_t sb_blockset_size(const sb_blockset* blocks);
void sb_blockset_free(sb_blockset* blocks);

/* ---- linear token form ---- */

sb_status sb_blockset_linearize(const sb_blockset* blocks,
                                const sb_mapping* mapping, char** token_lines_out);
sb_status sb_delinearize(const char* token_lines, const sb_mapping* mapping,
                         sb_blockset** out);

/* ---- grams and statistics ---- */

sb_status sb_blockset_grams_json(const sb_blockset* blocks, int max_temporal,
                                 int max_channel, char** json_out);
sb_status sb_blockset_gram_stats_tsv(const sb_blockset* blocks, int max_temporal,
                                     int max_channel, char** tsv_out);

/* ---- scoring ----
 *
 * config_json: {"max_temporal": 3, "max_channel": 2, "scope": "all"|"manual",
 *               "manual_channels": [...], "smoothing": "exp"|"none",
 *               "effective_order": false, "version": "0.1.0",
 *               "weights": {"t1": 0.25, ...}}
 * Every field is optional; defaults are the values above. Hypothesis and
 * reference sets must have equal segment counts; segment i of each reference
 * set references segment i of the hypothesis set. */

sb_status sb_score(const sb_blockset* hyp, const sb_blockset* const* refs,
                   size_t ref_count, const char* config_json,
                   char** report_json_out);
sb_status sb_signature(const char* config_json, char** signature_out);

/* ---- simulation harness ---- */

/* Runs the sampling-based meta-evaluation over a corpus whose documents all
 * carry text. extra_columns_tsv (nullable) merges externally computed per-run
 * score columns before correlation. score_table_tsv_out may be NULL when only
 * the correlation report is wanted. */
sb_status sb_simulate(const sb_docset* corpus, const sb_mapping* mapping,
                      uint64_t runs, uint64_t sample_size, uint64_t seed,
                      int max_temporal, int max_channel,
                      const char* extra_columns_tsv, char** score_table_tsv_out,
                      char** correlation_tsv_out);

#if defined(__cplusplus)
}
#endif

#endif /* SIGNBLEU_SIGNBLEU_H */
