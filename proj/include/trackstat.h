/* C interface to the trackstat core: train-track multicurve sampling and
 * topological-type statistics. All functions return ts_status; on failure
 * ts_last_error() describes the problem for the calling thread. Objects are
 * opaque handles released with their matching _free function. */

#ifndef TRACKSTAT_H
#define TRACKSTAT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ts_status {
    TS_OK = 0,
    TS_EINVAL = 1,    /* bad argument */
    TS_EPARSE = 2,    /* malformed file */
    TS_EVALID = 3,    /* validation failed (track, weights, config) */
    TS_EEMPTY = 4,    /* nothing to sample */
    TS_EBUDGET = 5,   /* a move budget was exhausted */
    TS_EIO = 6,       /* file system problem */
    TS_EINTERNAL = 7  /* invariant violation; please report */
} ts_status;

typedef struct ts_track ts_track;
typedef struct ts_report ts_report;

/* message for the most recent failure on this thread; never NULL */
const char* ts_last_error(void);

void ts_string_free(char* s);

/* ---- tracks ---- */

ts_status ts_track_load(const char* path, ts_track** out);
void ts_track_free(ts_track* track);

ts_status ts_track_info(const ts_track* track, int* genus, int* punctures, int* branches,
                        int* carried_dim);
/* 1 if the carried dimension matches 6g-6+2n (n = 0 when closed != 0) */
ts_status ts_track_dimension_check(const ts_track* track, int closed, int* ok);

/* |s_tau(L)| as a decimal string; free with ts_string_free */
ts_status ts_track_count(const ts_track* track, long long length_bound, char** count);

/* branch weights of one uniformly sampled multicurve; weights_len must equal
 * the branch count */
ts_status ts_track_sample(const ts_track* track, long long length_bound, uint64_t seed,
                          long long* weights, int weights_len);

/* canonical name of the multicurve carried with the given branch weights */
ts_status ts_track_classify(const ts_track* track, const long long* weights, int weights_len,
                            int closed, char** name);

/* ---- experiments ---- */

typedef struct ts_run_params {
    long long length_bound;
    long long samples;
    uint64_t seed;
    int filter; /* 0 none, 1 curves only, 2 primitive only */
    int closed;
    int workers;
} ts_run_params;

ts_status ts_run(const ts_track* track, const ts_run_params* params, ts_report** out);
void ts_report_free(ts_report* report);

ts_status ts_report_counts(const ts_report* report, long long* retained, long long* filtered_out,
                           long long* errored);
ts_status ts_report_num_rows(const ts_report* report, int* rows);
/* name pointer is owned by the report and valid until ts_report_free */
ts_status ts_report_row(const ts_report* report, int index, const char** name, long long* count,
                        double* fraction);
/* format: 0 csv, 1 json; free with ts_string_free */
ts_status ts_report_render(const ts_report* report, int format, char** text);

/* chi-square comparison against an expected table file of name,fraction
 * rows; free with ts_string_free */
ts_status ts_report_compare(const ts_report* report, const char* expected_path, char** text);

#ifdef __cplusplus
}
#endif

#endif /* TRACKSTAT_H */
