/* C interface of the xorcert library. Every function returns an xc_status;
 * on failure xc_last_error() describes the problem. Strings returned through
 * char** out-parameters are owned by the caller and released with
 * xc_string_free. */
#ifndef XORCERT_XORCERT_H
#define XORCERT_XORCERT_H

#include <stddef.h>
#include <stdint.h>

#if defined(XORCERT_BUILDING_LIBRARY)
#define XC_API __attribute__((visibility("default")))
#else
#define XC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum xc_status {
  XC_OK = 0,
  XC_ERR_INVALID_ARGUMENT = 1,
  XC_ERR_DIMENSION = 2,
  XC_ERR_EMPTY_INSTANCE = 3,
  XC_ERR_PARSE = 4,
  XC_ERR_IO = 5,
  XC_ERR_PRECONDITION = 6,
  XC_ERR_INTERNAL = 7,
  XC_ERR_NULL_ARGUMENT = 8
} xc_status;

typedef enum xc_outcome { XC_UNKNOWN = 0, XC_REFUTED = 1 } xc_outcome;

typedef struct xc_instance xc_instance;
typedef struct xc_certificate xc_certificate;
typedef struct xc_config xc_config;

XC_API const char* xc_version(void);
XC_API const char* xc_status_string(xc_status status);
/* Message of the last failure on the calling thread. */
XC_API const char* xc_last_error(void);
XC_API void xc_string_free(char* s);

/* ---- instances ---- */

typedef struct xc_instance_info {
  int is_kxor;      /* 1 for k-XOR, 0 for partitioned 2-XOR */
  size_t n;
  size_t k_or_ell;  /* arity k, or part count ell */
  size_t m;
  int has_dictionary;
} xc_instance_info;

XC_API xc_status xc_instance_load(const char* path, xc_instance** out);
XC_API xc_status xc_instance_from_json(const char* json, xc_instance** out);
XC_API xc_status xc_instance_save(const xc_instance* inst, const char* path);
XC_API xc_status xc_instance_to_json(const xc_instance* inst, char** out);
XC_API xc_status xc_instance_info_get(const xc_instance* inst, xc_instance_info* out);
XC_API xc_status xc_instance_digest(const xc_instance* inst, char** out);
XC_API void xc_instance_free(xc_instance* inst);

/* ---- generation ---- */

typedef struct xc_gen_spec {
  const char* family;   /* random, semi-random, star, cluster, heavy-group */
  int partitioned;      /* 0: k-XOR, 1: partitioned 2-XOR */
  size_t n;
  size_t k_or_ell;
  size_t m;
  uint64_t seed;        /* signs (and the hypergraph for "random") */
  uint64_t graph_seed;  /* hypergraph of every other family */
  size_t group_size;
  size_t groups;
  size_t cluster_size;  /* 0 picks a default */
} xc_gen_spec;

XC_API void xc_gen_spec_init(xc_gen_spec* spec);
XC_API xc_status xc_generate(const xc_gen_spec* spec, xc_instance** out);
XC_API size_t xc_family_count(void);
XC_API const char* xc_family_name(size_t index);

/* ---- reduction ---- */

/* k-XOR to partitioned 2-XOR; the result carries its subset dictionary. */
XC_API xc_status xc_reduce(const xc_instance* kxor, xc_instance** out);
/* Heavy/light split of a partitioned instance as JSON. cfg may be NULL. */
XC_API xc_status xc_decompose_json(const xc_instance* p2xor, double eps, const xc_config* cfg,
                                   char** out);

/* ---- configuration ---- */

XC_API xc_status xc_config_new(xc_config** out);
XC_API xc_status xc_config_load(const char* path, xc_config** out);
XC_API xc_status xc_config_set(xc_config* cfg, const char* key, const char* value);
XC_API xc_status xc_config_to_json(const xc_config* cfg, char** out);
XC_API void xc_config_free(xc_config* cfg);

/* ---- refutation and certificates ---- */

typedef struct xc_cert_summary {
  xc_outcome outcome;
  double certified_val_upper;
  double eps;
  uint64_t m;
  uint64_t m_light;
  uint64_t m_heavy;
  uint32_t d_cap;
  char combination[16]; /* light-only, heavy-only or both */
} xc_cert_summary;

/* cfg may be NULL for defaults. */
XC_API xc_status xc_refute(const xc_instance* inst, double eps, const xc_config* cfg,
                           uint64_t seed, xc_certificate** out);
XC_API xc_status xc_certificate_summary(const xc_certificate* cert, xc_cert_summary* out);
XC_API xc_status xc_certificate_load(const char* path, xc_certificate** out);
XC_API xc_status xc_certificate_from_json(const char* json, xc_certificate** out);
XC_API xc_status xc_certificate_save(const xc_certificate* cert, const char* path);
XC_API xc_status xc_certificate_to_json(const xc_certificate* cert, char** out);
XC_API void xc_certificate_free(xc_certificate* cert);

/* Sets *ok to 1 when every check passes. failures, when not NULL, receives
 * the failed checks one per line. brute adds the exhaustive soundness check. */
XC_API xc_status xc_verify(const xc_instance* inst, const xc_certificate* cert, int brute,
                           int* ok, char** failures);

/* ---- oracle ---- */

XC_API xc_status xc_brute_force_val(const xc_instance* inst, size_t cap, uint64_t* satisfied,
                                    uint64_t* total);

#ifdef __cplusplus
}
#endif

#endif /* XORCERT_XORCERT_H */
