/*
 * Copyright 2026 The stabtree Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the stabtree library.
 *
 * Handles are opaque. Every call returns an st_status; on failure the message
 * is available from st_last_error() on the calling thread until the next
 * call. Reports come back as JSON strings allocated by the library, to be
 * released with st_string_free(). Report output is deterministic: the same
 * inputs and options give byte-identical JSON.
 */

#ifndef STABTREE_STABTREE_H
#define STABTREE_STABTREE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ST_API __declspec(dllexport)
#else
#define ST_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum st_status {
    ST_OK = 0,
    ST_ERR_PARSE = 1,
    ST_ERR_ARITY = 2,
    ST_ERR_TOO_LARGE = 3,
    ST_ERR_NOT_HORN = 4,
    ST_ERR_MALFORMED_SCHEME = 5,
    ST_ERR_NOT_A_SEQUENCE = 6,
    ST_ERR_NOT_A_PATH = 7,
    ST_ERR_NOT_A_NODE = 8,
    ST_ERR_NOT_STABLE = 9,
    ST_ERR_OVERFLOW = 10,
    ST_ERR_INVALID_ARGUMENT = 11,
    ST_ERR_TREE_FORMAT = 12,
    ST_ERR_INTERNAL = 100
} st_status;

typedef struct st_program st_program;
typedef struct st_tree st_tree;

typedef struct st_options {
    size_t atom_limit;    /* largest Herbrand base enumerated by brute force */
    size_t depth;         /* grounding depth for programs with variables */
    size_t budget;        /* scheme search budget; 0 means exhaustive */
    uint64_t max_m;       /* blocking-set scan limit */
    int exact;            /* prog2tree: compare paths with stable models */
    int full_n_k;         /* prog2tree: use N_k in conditions (c) and (d) */
} st_options;

ST_API void st_options_init(st_options* options);

ST_API const char* st_version(void);
ST_API const char* st_status_name(st_status status);
ST_API const char* st_last_error(void);
ST_API void st_string_free(char* s);

/* Parses program text and grounds it (options->depth when it has variables). */
ST_API st_status st_program_parse(const char* text, const st_options* options, st_program** out);
ST_API void st_program_free(st_program* program);
/* Atoms, clauses and whether the grounding is exact. */
ST_API st_status st_program_info(const st_program* program, char** json);

/* Stable models by the reduct, by proof schemes and by both forms of the
 * defining equations. *passed is 1 when all four agree. */
ST_API st_status st_stable(const st_program* program, const st_options* options, char** json, int* passed);
ST_API st_status st_schemes(const st_program* program, const st_options* options, char** json);
ST_API st_status st_defeq(const st_program* program, const st_options* options, char** json);
/* Tree of the program: optional exact path check, branching census and a
 * blocking-set scan. *passed is 0 when the exact check disagrees. */
ST_API st_status st_prog2tree(const st_program* program, const st_options* options, char** json, int* passed);
/* Verdict for each prefix of a node given as comma-separated labels. */
ST_API st_status st_tree_walk(const st_program* program, const char* node, const st_options* options, char** json);
/* Explicit initial blocking sets for m = 0..options->max_m. *found is 1 when one exists. */
ST_API st_status st_blockingset(const st_program* program, const st_options* options, char** json, int* found);
ST_API st_status st_fsprobe(const st_program* program, const char* atom, const st_options* options, char** json);
/* Adds the switch gadget and compares stable model counts. */
ST_API st_status st_switch(const st_program* program, const st_options* options, char** json, int* passed);

/* Parses the tree JSON format. */
ST_API st_status st_tree_parse(const char* json, st_tree** out);
ST_API void st_tree_free(st_tree* tree);
/* Program of the tree, with bounded verification of M_beta for each path.
 * Paths are written STEM(CYCLE) with comma-separated labels, for example
 * "(0)" or "1,2(0,1)". With no paths, every path of a tree with finitely
 * many paths is verified. atom_bound is a decimal string or NULL for the
 * bound covering all nodes of length 4. */
ST_API st_status st_tree2prog(const st_tree* tree, const char* const* paths, size_t path_count, const char* atom_bound,
                              const st_options* options, char** json, int* passed);

/* Random program campaign running the invariant suite on each subject. */
ST_API st_status st_fuzz(uint64_t seed, size_t count, size_t max_atoms, size_t max_clauses,
                         const st_options* options, char** json, int* passed);

#ifdef __cplusplus
}
#endif

#endif
