#include "xorcert/pipeline.hpp"

#include <algorithm>

#include "xorcert/error.hpp"
#include "xorcert/serialize.hpp"

namespace xorcert {

Certificate refute_partitioned(const PartitionedInstance& inst, double eps, const Config& cfg,
                               std::uint64_t seed) {
  validate(cfg);
  require(eps > 0.0 && eps < 0.5, ErrorCode::kInvalidArgument, "eps must lie in (0, 1/2)");
  require(inst.m() >= 1, ErrorCode::kEmptyInstance, "empty instance");

  Certificate cert;
  cert.instance_digest = instance_digest(inst);
  cert.instance_kind = "p2xor";
  cert.eps = eps;
  cert.seed = seed;
  cert.config = cfg;

  const Decomposition dec = decompose(inst, eps, cfg.c_split);
  cert.decomposition = {dec.m_light(), dec.m_heavy(), dec.d_cap, dec.heavy.left.size()};

  const double side_eps = eps / 2.0;
  const double m = static_cast<double>(inst.m());
  Combination& comb = cert.combination;
  comb.m = inst.m();

  if (dec.m_light() > 0) {
    cert.light = certify_dbounded(dec.light, side_eps, dec.d_cap, cfg.spectral());
    comb.light_bound =
        cert.light->outcome.certified_val_upper * static_cast<double>(dec.m_light());
  }
  if (dec.m_heavy() > 0) {
    TwoXorResult h = refute_2xor(dec.heavy, side_eps, cfg.sdp(seed));
    cert.heavy = HeavyCertificate{side_eps, h.outcome, h.rows, h.cols, std::move(h.cert)};
    comb.heavy_bound =
        cert.heavy->outcome.certified_val_upper * static_cast<double>(dec.m_heavy());
  }

  const bool light_required = static_cast<double>(dec.m_light()) >= eps * m / 2.0;
  const bool heavy_required = static_cast<double>(dec.m_heavy()) >= eps * m / 2.0;
  comb.case_name = light_required && heavy_required ? "both"
                   : light_required                 ? "light-only"
                                                    : "heavy-only";
  comb.combined = (comb.light_bound + comb.heavy_bound) / m;

  bool sides_ok = true;
  if (light_required) sides_ok = sides_ok && cert.light->outcome.status == Status::kRefuted;
  if (heavy_required) sides_ok = sides_ok && cert.heavy->outcome.status == Status::kRefuted;
  cert.outcome.certified_val_upper = std::min(1.0, comb.combined);
  cert.outcome.status =
      sides_ok && comb.combined <= 0.5 + eps ? Status::kRefuted : Status::kUnknown;
  cert.digest = certificate_digest(cert);
  return cert;
}

Certificate refute_kxor(const KXorInstance& inst, double eps, const Config& cfg,
                        std::uint64_t seed) {
  require(inst.m() >= 1, ErrorCode::kEmptyInstance, "empty instance");
  const ReducedInstance reduced = kxor_to_partitioned(inst);
  Certificate cert = refute_partitioned(reduced.instance, eps, cfg, seed);
  cert.instance_digest = instance_digest(inst);
  cert.instance_kind = "kxor";
  cert.reduction =
      ReductionInfo{reduced.odd_arity ? "odd" : "even", dictionary_digest(reduced.dictionary)};
  cert.digest = certificate_digest(cert);
  return cert;
}

}  // namespace xorcert
