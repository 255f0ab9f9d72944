// Copyright 2026 The legisrgcn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the legisrgcn library.
 *
 * Handles are opaque. Every fallible call returns an lg_status; on failure
 * lg_last_error() describes the problem (thread-local, valid until the next
 * call on the same thread). Strings returned through char** are owned by the
 * caller and released with lg_string_free. Command functions return a JSON
 * summary. */

#ifndef LEGISRGCN_LEGISRGCN_H_
#define LEGISRGCN_LEGISRGCN_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LG_API __declspec(dllexport)
#else
#define LG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lg_status {
  LG_OK = 0,
  LG_ERR_INVALID_ARGUMENT = 1,
  LG_ERR_SCHEMA = 2,
  LG_ERR_DANGLING_REFERENCE = 3,
  LG_ERR_INVALID_TIMELINE = 4,
  LG_ERR_EMPTY_CONGRESS = 5,
  LG_ERR_EMPTY_DOCUMENT = 6,
  LG_ERR_EMPTY_SPLIT = 7,
  LG_ERR_NOT_FOUND = 8,
  LG_ERR_AMBIGUOUS = 9,
  LG_ERR_TARGET_NOT_CITED = 10,
  LG_ERR_BACKEND_FAILURE = 11,
  LG_ERR_DIMENSION_MISMATCH = 12,
  LG_ERR_MISSING_EMBEDDING = 13,
  LG_ERR_NO_SPEECH_AVAILABLE = 14,
  LG_ERR_NO_CITATION_AVAILABLE = 15,
  LG_ERR_MISSING_RESOURCE = 16,
  LG_ERR_LEAKAGE_DETECTED = 17,
  LG_ERR_DIVERGENCE = 18,
  LG_ERR_IO = 19,
  LG_ERR_DIGEST_MISMATCH = 20,
  LG_ERR_INTERNAL = 99
} lg_status;

typedef struct lg_config lg_config;
typedef struct lg_corpus lg_corpus;

LG_API const char* lg_version(void);
LG_API const char* lg_last_error(void);
LG_API const char* lg_status_name(lg_status status);
/* Process exit code for a status: 0 ok, 2 usage, 3 data, 4 internal. */
LG_API int lg_status_exit_code(lg_status status);
LG_API void lg_string_free(char* s);

/* Configuration: registered defaults, then files, environment and single
 * keys in the order applied. Unknown keys are rejected. */
LG_API lg_status lg_config_new(lg_config** out);
LG_API void lg_config_free(lg_config* config);
LG_API lg_status lg_config_load(lg_config* config, const char* path);
LG_API lg_status lg_config_apply_env(lg_config* config, const char* prefix);
LG_API lg_status lg_config_set(lg_config* config, const char* key, const char* value);
LG_API lg_status lg_config_get(const lg_config* config, const char* key, char** value);
LG_API lg_status lg_config_dump(const lg_config* config, char** text);

/* Corpora. what: "legislators", "bills", "speeches", "cosponsorships",
 * "votes" or "congresses". */
LG_API lg_status lg_corpus_load(const char* path, lg_corpus** out);
LG_API void lg_corpus_free(lg_corpus* corpus);
LG_API lg_status lg_corpus_count(const lg_corpus* corpus, const char* what, size_t* count);

/* Commands. */
LG_API lg_status lg_corpus_validate(const char* path, char** summary);
LG_API lg_status lg_corpus_stats(const char* path, char** summary);
LG_API lg_status lg_corpus_split(const lg_config* config, const char* out_dir, char** summary);
LG_API lg_status lg_corpus_synth(const char* out_dir, const char* pattern, uint64_t seed,
                                 int legislators, int bills, int speeches, char** summary);
LG_API lg_status lg_parse_editions(const char* in_dir, const char* roster_path, const char* out_dir,
                                   const char* aliases_path, char** summary);
LG_API lg_status lg_encode(const lg_config* config, const char* kind, const char* cache_path,
                           char** summary);
LG_API lg_status lg_graph_build(const lg_config* config, const char* split, const char* out_dir,
                                char** summary);
LG_API lg_status lg_train(const lg_config* config, const char* out_dir, int resume, char** summary);
LG_API lg_status lg_eval_baseline(const lg_config* config, const char* name, const char* out_dir,
                                  char** summary);
LG_API lg_status lg_eval_ablate(const lg_config* config, const char* out_dir, char** summary);
/* run_dir may be NULL or empty to train from scratch into out_dir. */
LG_API lg_status lg_eval_rollcall(const lg_config* config, const char* run_dir, const char* out_dir,
                                  char** summary);
LG_API lg_status lg_analyze_similarity(const lg_config* config, const char* run_dir,
                                       const char* out_dir, char** summary);
LG_API lg_status lg_analyze_project(const lg_config* config, const char* run_dir,
                                    const char* out_dir, char** summary);

#ifdef __cplusplus
}
#endif

#endif /* LEGISRGCN_LEGISRGCN_H_ */
