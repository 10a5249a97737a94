#include "xorcert/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "xorcert/error.hpp"
#include "xorcert/oracle.hpp"
#include "xorcert/serialize.hpp"

namespace xorcert {

namespace {

class Checker {
 public:
  explicit Checker(double tol) : tol_(tol) {}

  void check(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }

  void close(double claimed, double actual, const std::string& what) {
    const double scale = std::max({1.0, std::abs(claimed), std::abs(actual)});
    if (!(std::abs(claimed - actual) <= tol_ * scale)) {
      std::ostringstream ss;
      ss.precision(17);
      ss << what << ": claimed " << claimed << ", recomputed " << actual;
      failures_.push_back(ss.str());
    }
  }

  std::vector<std::string> take() { return std::move(failures_); }
  double tol() const { return tol_; }

 private:
  double tol_;
  std::vector<std::string> failures_;
};

void verify_light(Checker& ck, const LightCertificate& light, const PartitionedInstance& inst,
                  double side_eps, double d, const Config& cfg) {
  ck.close(light.eps, side_eps, "light eps");
  ck.close(light.d, d, "light degree bound");

  const DegreeProfile profile = degree_profile(inst);
  const ButterflyTable table = butterfly(profile);
  const WeightClassPartition w =
      weight_classes(table, {cfg.c_alpha, d, side_eps, profile.m, profile.ell(), profile.n});
  const WeightClassPartition& cw = light.partition;
  ck.close(cw.alpha, w.alpha, "alpha");
  ck.close(cw.beta, w.beta, "beta");
  ck.check(cw.L == w.L, "class count L");
  ck.check(cw.beta_clamped == w.beta_clamped, "beta clamp flag");
  ck.check(cw.class_sizes == w.class_sizes, "class sizes");

  const std::vector<Block> blocks = build_blocks(profile, table, w);
  ck.check(blocks.size() == light.blocks.size(), "number of nonempty blocks");
  const double delta_block = cfg.delta / std::pow(static_cast<double>(w.L + 1), 2);
  double phi1 = 0.0;
  const std::size_t count = std::min(blocks.size(), light.blocks.size());
  for (std::size_t i = 0; i < count; ++i) {
    const Block& b = blocks[i];
    const BlockCert& c = light.blocks[i];
    const std::string tag = "block (" + std::to_string(b.j) + "," + std::to_string(b.k) + ")";
    ck.check(c.j == b.j && c.k == b.k, tag + " index");
    ck.check(c.rows == b.row_keys.size() && c.cols == b.col_keys.size(), tag + " shape");
    ck.check(c.size_j == w.class_sizes[b.j] && c.size_k == w.class_sizes[b.k],
             tag + " class sizes");
    ck.check(std::isfinite(c.norm.lower) && c.norm.lower >= 0.0 && c.norm.lower <= c.norm.upper,
             tag + " norm interval");
    ck.check(verify_norm_upper(b.matrix, c.norm.upper, ck.tol(), cfg.dense_cap),
             tag + " norm upper bound is not certified");
    ck.close(c.bernstein_t,
             bernstein_threshold(block_variance_bound(w, b.j, b.k),
                                 block_R_bound(w, b.j, b.k, d), w.class_sizes[b.j],
                                 w.class_sizes[b.k], delta_block),
             tag + " Bernstein threshold");
    phi1 += std::sqrt(static_cast<double>(b.row_keys.size()) *
                      static_cast<double>(b.col_keys.size())) *
            c.norm.upper;
  }

  const PhiBoundReport& r = light.phi;
  ck.check(r.m == profile.m && r.ell == profile.ell(), "light m / ell");
  ck.close(r.phi2_term, phi2_term(profile), "phi2 term");
  ck.close(r.phi1_bound, phi1, "phi1 bound");
  const double total = phi1 + phi2_term(profile);
  ck.close(r.phi_total_bound, total, "phi total bound");
  const double m = static_cast<double>(profile.m);
  const double threshold =
      4.0 * side_eps * side_eps * std::pow(m, 1.5) / std::sqrt(static_cast<double>(profile.ell()));
  ck.close(r.threshold, threshold, "phi threshold");
  const double implied = implied_eps_for(total, profile.m, profile.ell());
  ck.close(r.implied_eps, implied, "implied eps");
  ck.close(r.certified_val_upper, std::min(1.0, 0.5 + implied), "light value bound");
  ck.check(light.outcome.status == (total <= threshold ? Status::kRefuted : Status::kUnknown),
           "light status");
}

void verify_heavy(Checker& ck, const HeavyCertificate& heavy, const BipartiteInstance& inst,
                  double side_eps, const Config& cfg) {
  ck.close(heavy.eps, side_eps, "heavy eps");
  const SignMatrix sm = sign_matrix(inst);
  ck.check(heavy.rows == sm.matrix.rows() && heavy.cols == sm.matrix.cols(), "heavy shape");
  const bool dims = heavy.dual.d_left.size() == sm.matrix.rows() &&
                    heavy.dual.d_right.size() == sm.matrix.cols();
  ck.check(dims, "dual certificate dimensions");
  if (dims) {
    ck.check(check_dual_cert(sm.matrix, heavy.dual, ck.tol(), cfg.dense_cap),
             "dual certificate is not feasible");
  }
  const double m = static_cast<double>(inst.m());
  const double bound = heavy.dual.bound;
  ck.close(heavy.outcome.certified_val_upper, std::min(1.0, 0.5 + bound / (2.0 * m)),
           "heavy value bound");
  ck.check(heavy.outcome.status ==
               (bound <= 2.0 * side_eps * m ? Status::kRefuted : Status::kUnknown),
           "heavy status");
}

}  // namespace

VerifyReport verify_certificate(const Certificate& cert, const AnyInstance& inst, bool brute) {
  Checker ck(cert.config.soundness_slack > 0.0 && cert.config.soundness_slack < 1e-3
                 ? cert.config.soundness_slack
                 : 1e-9);
  VerifyReport report;
  auto finish = [&] {
    report.failures = ck.take();
    report.ok = report.failures.empty();
    return report;
  };

  ck.check(cert.schema == kCertSchema, "unsupported schema '" + cert.schema + "'");
  ck.check(cert.digest == certificate_digest(cert), "certificate digest mismatch");
  ck.check(cert.instance_digest == instance_digest(inst), "instance digest mismatch");
  ck.check(cert.instance_kind == instance_kind(inst), "instance kind mismatch");
  try {
    validate(cert.config);
  } catch (const Error& e) {
    ck.check(false, std::string("invalid config: ") + e.what());
    return finish();
  }
  if (!(cert.eps > 0.0 && cert.eps < 0.5)) {
    ck.check(false, "eps outside (0, 1/2)");
    return finish();
  }

  std::optional<PartitionedInstance> part;
  if (const auto* k = std::get_if<KXorInstance>(&inst)) {
    if (k->m() == 0) {
      ck.check(false, "empty instance");
      return finish();
    }
    const ReducedInstance reduced = kxor_to_partitioned(*k);
    ck.check(cert.reduction.has_value(), "missing reduction record");
    if (cert.reduction) {
      ck.check(cert.reduction->mode == (reduced.odd_arity ? "odd" : "even"), "reduction mode");
      ck.check(cert.reduction->dictionary_digest == dictionary_digest(reduced.dictionary),
               "dictionary digest mismatch");
    }
    part = reduced.instance;
  } else {
    ck.check(!cert.reduction.has_value(), "unexpected reduction record");
    part = std::get<PartitionedInstance>(inst);
  }
  if (part->m() == 0) {
    ck.check(false, "empty instance");
    return finish();
  }

  const Decomposition dec = decompose(*part, cert.eps, cert.config.c_split);
  const DecompositionSummary& ds = cert.decomposition;
  ck.check(ds.m_light == dec.m_light() && ds.m_heavy == dec.m_heavy(), "decomposition sizes");
  ck.check(ds.d_cap == dec.d_cap, "degree cap");
  ck.check(ds.heavy_groups == dec.heavy.left.size(), "heavy group count");

  const double side_eps = cert.eps / 2.0;
  ck.check(cert.light.has_value() == (dec.m_light() > 0), "light section presence");
  ck.check(cert.heavy.has_value() == (dec.m_heavy() > 0), "heavy section presence");
  double light_bound = 0.0;
  double heavy_bound = 0.0;
  Status light_status = Status::kUnknown;
  Status heavy_status = Status::kUnknown;
  if (cert.light && dec.m_light() > 0) {
    verify_light(ck, *cert.light, dec.light, side_eps, dec.d_cap, cert.config);
    light_bound = std::min(1.0, 0.5 + implied_eps_for(cert.light->phi.phi_total_bound,
                                                       dec.m_light(), cert.light->phi.ell)) *
                  static_cast<double>(dec.m_light());
    light_status = cert.light->outcome.status;
  }
  if (cert.heavy && dec.m_heavy() > 0) {
    verify_heavy(ck, *cert.heavy, dec.heavy, side_eps, cert.config);
    heavy_bound = std::min(1.0, 0.5 + cert.heavy->dual.bound / (2.0 * dec.m_heavy())) *
                  static_cast<double>(dec.m_heavy());
    heavy_status = cert.heavy->outcome.status;
  }

  const double m = static_cast<double>(part->m());
  const Combination& c = cert.combination;
  const bool light_required = static_cast<double>(dec.m_light()) >= cert.eps * m / 2.0;
  const bool heavy_required = static_cast<double>(dec.m_heavy()) >= cert.eps * m / 2.0;
  const std::string case_name = light_required && heavy_required ? "both"
                                : light_required                 ? "light-only"
                                                                 : "heavy-only";
  ck.check(c.case_name == case_name, "combination case");
  ck.check(c.m == part->m(), "combination m");
  ck.close(c.light_bound, light_bound, "light side bound");
  ck.close(c.heavy_bound, heavy_bound, "heavy side bound");
  const double combined = (light_bound + heavy_bound) / m;
  ck.close(c.combined, combined, "combined bound");
  ck.close(cert.outcome.certified_val_upper, std::min(1.0, combined), "certified value bound");
  const bool sides_ok = (!light_required || light_status == Status::kRefuted) &&
                        (!heavy_required || heavy_status == Status::kRefuted);
  const Status status =
      sides_ok && combined <= 0.5 + cert.eps ? Status::kRefuted : Status::kUnknown;
  ck.check(cert.outcome.status == status, "outcome status");
  if (cert.outcome.status == Status::kRefuted) {
    ck.check(cert.outcome.certified_val_upper <= 0.5 + cert.eps,
             "REFUTED bound exceeds 1/2 + eps");
  }

  if (brute) {
    Fraction val = std::holds_alternative<KXorInstance>(inst)
                       ? brute_force_val(std::get<KXorInstance>(inst), cert.config.brute_cap).val
                       : brute_force_val(std::get<PartitionedInstance>(inst),
                                         cert.config.brute_cap)
                             .val;
    ck.check(val.value() <= std::min(1.0, combined) + ck.tol(),
             "exhaustive val " + std::to_string(val.value()) + " exceeds the certified bound");
  }
  return finish();
}

}  // namespace xorcert
