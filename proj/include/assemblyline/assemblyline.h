#ifndef ASSEMBLYLINE_H
#define ASSEMBLYLINE_H

/* C interface to the assemblyline library. Every function returns an
 * al_status; on failure al_last_error() describes the problem for the
 * calling thread. Handles are opaque and owned by the caller. Text results
 * (JSON or CSV) come back as al_text handles. */

#include <stddef.h>
#include <stdint.h>

#if defined(AL_BUILDING_LIBRARY)
#define AL_API __attribute__((visibility("default")))
#else
#define AL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum al_status {
  AL_OK = 0,
  AL_ERR_INVALID_ARGUMENT = 1,
  AL_ERR_OUT_OF_RANGE = 2,
  AL_ERR_LEVEL_MISMATCH = 3,
  AL_ERR_NUMERICAL = 4,
  AL_ERR_IO = 5,
  AL_ERR_INTERNAL = 6,
  /* The operation ran and produced its report, but a check failed. */
  AL_ERR_CHECK_FAILED = 7
} al_status;

typedef struct al_sequence al_sequence;
typedef struct al_text al_text;

AL_API const char* al_version(void);
AL_API const char* al_last_error(void);

AL_API const char* al_text_data(const al_text* text);
AL_API size_t al_text_size(const al_text* text);
AL_API void al_text_free(al_text* text);

/* {"head": [...], "extension": {"kind": "constant"|"periodic", "period": p}} */
AL_API al_status al_sequence_from_json(const char* json, al_sequence** out);
AL_API al_status al_sequence_constant(uint32_t degree, al_sequence** out);
AL_API void al_sequence_free(al_sequence* seq);
AL_API al_status al_sequence_to_json(const al_sequence* seq, al_text** out);
AL_API al_status al_sequence_degree(const al_sequence* seq, size_t level, uint32_t* out);
AL_API al_status al_sequence_m_star(const al_sequence* seq, uint32_t* out);
/* log v_l, log r_l and log n_l. */
AL_API al_status al_sequence_log_scales(const al_sequence* seq, size_t level, double* log_volume,
                                        double* log_resistance, double* log_time_scale);
/* l(n) and alpha_n for real n >= 1. */
AL_API al_status al_sequence_level_of(const al_sequence* seq, double n, size_t* level, double* alpha);

/* Builds a sequence tracking the named target ("pow:beta" or
 * "pow-log:beta,k") with declared upper exponent gamma. The certificate
 * holds the level trace, the target validation and the tracking checks;
 * AL_ERR_CHECK_FAILED is returned (with both outputs set) when a check
 * fails. */
AL_API al_status al_design(const char* target, double gamma, size_t levels, al_sequence** seq,
                           al_text** certificate);

/* P(T > i) for i = 0..horizon into out[0..horizon]. */
AL_API al_status al_chain_return_tail(const al_sequence* seq, size_t horizon, double* out);
/* CSV: i,P_T_gt_i,partial_sum,alpha_n,lower_bound,upper_bound,margin_low,margin_high */
AL_API al_status al_chain_tail_csv(const al_sequence* seq, size_t horizon, al_text** out);
/* All chain checks up to horizon as a JSON report. */
AL_API al_status al_chain_verify(const al_sequence* seq, size_t horizon, al_text** out);

/* Per-replica inverted-orbit statistics as CSV. threads = 0 uses all cores. */
AL_API al_status al_simulate_orbits(const al_sequence* seq, uint64_t steps, size_t replicas, uint64_t seed,
                                    int ray_tree, unsigned threads, al_text** out);
/* Switch-walk-switch speed table as CSV. lamps is "z" or "z2"; grid uses
 * the "B^a:B^b" or comma-list syntax. */
AL_API al_status al_simulate_wreath(const al_sequence* seq, const char* lamps, const char* grid, size_t replicas,
                                    uint64_t seed, unsigned threads, al_text** out);

/* Exact-input bound sweep over the grid as a JSON report. */
AL_API al_status al_verify_bounds(const al_sequence* seq, const char* grid, al_text** out);

#ifdef __cplusplus
}
#endif

#endif
