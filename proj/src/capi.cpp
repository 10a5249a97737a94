#include "xorcert/xorcert.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "xorcert/config.hpp"
#include "xorcert/error.hpp"
#include "xorcert/generate.hpp"
#include "xorcert/oracle.hpp"
#include "xorcert/pipeline.hpp"
#include "xorcert/reduce.hpp"
#include "xorcert/serialize.hpp"
#include "xorcert/verify.hpp"

struct xc_instance {
  xorcert::LoadedInstance value;
};

struct xc_certificate {
  xorcert::Certificate value;
};

struct xc_config {
  xorcert::Config value;
};

namespace {

thread_local std::string g_last_error;

xc_status to_status(xorcert::ErrorCode code) {
  using xorcert::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return XC_ERR_INVALID_ARGUMENT;
    case ErrorCode::kDimensionMismatch:
      return XC_ERR_DIMENSION;
    case ErrorCode::kEmptyInstance:
      return XC_ERR_EMPTY_INSTANCE;
    case ErrorCode::kParse:
      return XC_ERR_PARSE;
    case ErrorCode::kIo:
      return XC_ERR_IO;
    case ErrorCode::kPrecondition:
      return XC_ERR_PRECONDITION;
    case ErrorCode::kInternal:
      return XC_ERR_INTERNAL;
  }
  return XC_ERR_INTERNAL;
}

template <typename Fn>
xc_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return XC_OK;
  } catch (const xorcert::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return XC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return XC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return XC_ERR_INTERNAL;
  }
}

xc_status null_arg(const char* name) {
  g_last_error = std::string("null argument: ") + name;
  return XC_ERR_NULL_ARGUMENT;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

#define XC_REQUIRE(ptr)                      \
  do {                                       \
    if ((ptr) == nullptr) return null_arg(#ptr); \
  } while (0)

extern "C" {

const char* xc_version(void) { return xorcert::kToolVersion; }

const char* xc_status_string(xc_status status) {
  switch (status) {
    case XC_OK:
      return "ok";
    case XC_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case XC_ERR_DIMENSION:
      return "dimension mismatch";
    case XC_ERR_EMPTY_INSTANCE:
      return "empty instance";
    case XC_ERR_PARSE:
      return "parse error";
    case XC_ERR_IO:
      return "I/O error";
    case XC_ERR_PRECONDITION:
      return "precondition violated";
    case XC_ERR_INTERNAL:
      return "internal error";
    case XC_ERR_NULL_ARGUMENT:
      return "null argument";
  }
  return "unknown status";
}

const char* xc_last_error(void) { return g_last_error.c_str(); }

void xc_string_free(char* s) { std::free(s); }

xc_status xc_instance_load(const char* path, xc_instance** out) {
  XC_REQUIRE(path);
  XC_REQUIRE(out);
  return guarded([&] {
    *out = new xc_instance{xorcert::instance_from_json(xorcert::read_text_file(path))};
  });
}

xc_status xc_instance_from_json(const char* json, xc_instance** out) {
  XC_REQUIRE(json);
  XC_REQUIRE(out);
  return guarded([&] { *out = new xc_instance{xorcert::instance_from_json(json)}; });
}

xc_status xc_instance_to_json(const xc_instance* inst, char** out) {
  XC_REQUIRE(inst);
  XC_REQUIRE(out);
  return guarded([&] {
    const auto& d = inst->value.dictionary;
    *out = copy_string(xorcert::instance_to_json(inst->value.instance, -1, d ? &*d : nullptr));
  });
}

xc_status xc_instance_save(const xc_instance* inst, const char* path) {
  XC_REQUIRE(inst);
  XC_REQUIRE(path);
  return guarded([&] {
    const auto& d = inst->value.dictionary;
    xorcert::write_text_file(
        path, xorcert::instance_to_json(inst->value.instance, -1, d ? &*d : nullptr));
  });
}

xc_status xc_instance_info_get(const xc_instance* inst, xc_instance_info* out) {
  XC_REQUIRE(inst);
  XC_REQUIRE(out);
  return guarded([&] {
    if (const auto* k = std::get_if<xorcert::KXorInstance>(&inst->value.instance)) {
      *out = {1, k->n(), k->k(), k->m(), inst->value.dictionary.has_value()};
    } else {
      const auto& p = std::get<xorcert::PartitionedInstance>(inst->value.instance);
      *out = {0, p.n(), p.ell(), p.m(), inst->value.dictionary.has_value()};
    }
  });
}

xc_status xc_instance_digest(const xc_instance* inst, char** out) {
  XC_REQUIRE(inst);
  XC_REQUIRE(out);
  return guarded([&] { *out = copy_string(xorcert::instance_digest(inst->value.instance)); });
}

void xc_instance_free(xc_instance* inst) { delete inst; }

void xc_gen_spec_init(xc_gen_spec* spec) {
  if (spec == nullptr) return;
  const xorcert::GenSpec d;
  *spec = {"random", 0, 0, 0, 0, 0, 0, d.group_size, d.groups, d.cluster_size};
}

xc_status xc_generate(const xc_gen_spec* spec, xc_instance** out) {
  XC_REQUIRE(spec);
  XC_REQUIRE(out);
  XC_REQUIRE(spec->family);
  return guarded([&] {
    xorcert::GenSpec g;
    g.family = spec->family;
    g.target = spec->partitioned ? xorcert::Target::kPartitioned : xorcert::Target::kKXor;
    g.n = spec->n;
    g.k_or_ell = spec->k_or_ell;
    g.m = spec->m;
    g.seed = spec->seed;
    g.graph_seed = spec->graph_seed;
    g.group_size = spec->group_size;
    g.groups = spec->groups;
    g.cluster_size = spec->cluster_size;
    *out = new xc_instance{{xorcert::generate(g), std::nullopt}};
  });
}

size_t xc_family_count(void) { return xorcert::generator_families().size(); }

const char* xc_family_name(size_t index) {
  const auto& f = xorcert::generator_families();
  return index < f.size() ? f[index].c_str() : nullptr;
}

xc_status xc_reduce(const xc_instance* kxor, xc_instance** out) {
  XC_REQUIRE(kxor);
  XC_REQUIRE(out);
  return guarded([&] {
    const auto* k = std::get_if<xorcert::KXorInstance>(&kxor->value.instance);
    xorcert::require(k != nullptr, xorcert::ErrorCode::kInvalidArgument,
                     "reduction expects a k-XOR instance");
    xorcert::ReducedInstance r = xorcert::kxor_to_partitioned(*k);
    *out = new xc_instance{{std::move(r.instance), std::move(r.dictionary)}};
  });
}

xc_status xc_decompose_json(const xc_instance* p2xor, double eps, const xc_config* cfg,
                            char** out) {
  XC_REQUIRE(p2xor);
  XC_REQUIRE(out);
  return guarded([&] {
    const auto* p = std::get_if<xorcert::PartitionedInstance>(&p2xor->value.instance);
    xorcert::require(p != nullptr, xorcert::ErrorCode::kInvalidArgument,
                     "decomposition expects a partitioned instance");
    const double c_split = cfg ? cfg->value.c_split : xorcert::Config{}.c_split;
    *out = copy_string(xorcert::decomposition_to_json(xorcert::decompose(*p, eps, c_split)));
  });
}

xc_status xc_config_new(xc_config** out) {
  XC_REQUIRE(out);
  return guarded([&] { *out = new xc_config{}; });
}

xc_status xc_config_load(const char* path, xc_config** out) {
  XC_REQUIRE(path);
  XC_REQUIRE(out);
  return guarded([&] {
    *out = new xc_config{xorcert::config_from_json(xorcert::read_text_file(path))};
  });
}

xc_status xc_config_set(xc_config* cfg, const char* key, const char* value) {
  XC_REQUIRE(cfg);
  XC_REQUIRE(key);
  XC_REQUIRE(value);
  return guarded([&] {
    xorcert::Config next = cfg->value;
    xorcert::config_set(next, key, value);
    xorcert::validate(next);
    cfg->value = next;
  });
}

xc_status xc_config_to_json(const xc_config* cfg, char** out) {
  XC_REQUIRE(cfg);
  XC_REQUIRE(out);
  return guarded([&] { *out = copy_string(xorcert::config_to_json(cfg->value)); });
}

void xc_config_free(xc_config* cfg) { delete cfg; }

xc_status xc_refute(const xc_instance* inst, double eps, const xc_config* cfg, uint64_t seed,
                    xc_certificate** out) {
  XC_REQUIRE(inst);
  XC_REQUIRE(out);
  return guarded([&] {
    const xorcert::Config c = cfg ? cfg->value : xorcert::Config{};
    if (const auto* k = std::get_if<xorcert::KXorInstance>(&inst->value.instance)) {
      *out = new xc_certificate{xorcert::refute_kxor(*k, eps, c, seed)};
    } else {
      const auto& p = std::get<xorcert::PartitionedInstance>(inst->value.instance);
      *out = new xc_certificate{xorcert::refute_partitioned(p, eps, c, seed)};
    }
  });
}

xc_status xc_certificate_summary(const xc_certificate* cert, xc_cert_summary* out) {
  XC_REQUIRE(cert);
  XC_REQUIRE(out);
  return guarded([&] {
    const xorcert::Certificate& c = cert->value;
    *out = {};
    out->outcome = c.outcome.status == xorcert::Status::kRefuted ? XC_REFUTED : XC_UNKNOWN;
    out->certified_val_upper = c.outcome.certified_val_upper;
    out->eps = c.eps;
    out->m = c.combination.m;
    out->m_light = c.decomposition.m_light;
    out->m_heavy = c.decomposition.m_heavy;
    out->d_cap = c.decomposition.d_cap;
    std::strncpy(out->combination, c.combination.case_name.c_str(),
                 sizeof(out->combination) - 1);
  });
}

xc_status xc_certificate_load(const char* path, xc_certificate** out) {
  XC_REQUIRE(path);
  XC_REQUIRE(out);
  return guarded([&] {
    *out = new xc_certificate{xorcert::certificate_from_json(xorcert::read_text_file(path))};
  });
}

xc_status xc_certificate_from_json(const char* json, xc_certificate** out) {
  XC_REQUIRE(json);
  XC_REQUIRE(out);
  return guarded([&] { *out = new xc_certificate{xorcert::certificate_from_json(json)}; });
}

xc_status xc_certificate_save(const xc_certificate* cert, const char* path) {
  XC_REQUIRE(cert);
  XC_REQUIRE(path);
  return guarded(
      [&] { xorcert::write_text_file(path, xorcert::certificate_to_json(cert->value)); });
}

xc_status xc_certificate_to_json(const xc_certificate* cert, char** out) {
  XC_REQUIRE(cert);
  XC_REQUIRE(out);
  return guarded([&] { *out = copy_string(xorcert::certificate_to_json(cert->value)); });
}

void xc_certificate_free(xc_certificate* cert) { delete cert; }

xc_status xc_verify(const xc_instance* inst, const xc_certificate* cert, int brute, int* ok,
                    char** failures) {
  XC_REQUIRE(inst);
  XC_REQUIRE(cert);
  XC_REQUIRE(ok);
  return guarded([&] {
    const xorcert::VerifyReport r =
        xorcert::verify_certificate(cert->value, inst->value.instance, brute != 0);
    *ok = r.ok ? 1 : 0;
    if (failures != nullptr) {
      std::string joined;
      for (const std::string& f : r.failures) joined += f + "\n";
      *failures = copy_string(joined);
    }
  });
}

xc_status xc_brute_force_val(const xc_instance* inst, size_t cap, uint64_t* satisfied,
                             uint64_t* total) {
  XC_REQUIRE(inst);
  XC_REQUIRE(satisfied);
  XC_REQUIRE(total);
  return guarded([&] {
    const xorcert::BruteResult r =
        std::holds_alternative<xorcert::KXorInstance>(inst->value.instance)
            ? xorcert::brute_force_val(std::get<xorcert::KXorInstance>(inst->value.instance), cap)
            : xorcert::brute_force_val(
                  std::get<xorcert::PartitionedInstance>(inst->value.instance), cap);
    *satisfied = r.val.satisfied;
    *total = r.val.total;
  });
}

}  // extern "C"
