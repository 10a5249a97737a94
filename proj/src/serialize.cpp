#include "xorcert/serialize.hpp"

#include <fstream>
#include <sstream>

#include "json_io.hpp"
#include "xorcert/digest.hpp"
#include "xorcert/error.hpp"

namespace xorcert {

using nlohmann::json;

namespace detail {

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kParse, what + " is not valid JSON: " + e.what());
  }
}

}  // namespace detail

namespace {

const json& field(const json& j, const char* key) {
  require(j.is_object(), ErrorCode::kParse, std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  require(it != j.end(), ErrorCode::kParse, std::string("missing field '") + key + "'");
  return *it;
}

template <typename T>
T get(const json& j, const char* key) {
  const json& v = field(j, key);
  try {
    if constexpr (std::is_same_v<T, double>) {
      require(v.is_number(), ErrorCode::kParse, std::string("field '") + key + "' must be a number");
    } else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
      require(v.is_number_integer(), ErrorCode::kParse,
              std::string("field '") + key + "' must be an integer");
      if constexpr (std::is_unsigned_v<T>) {
        require(v.is_number_unsigned(), ErrorCode::kParse,
                std::string("field '") + key + "' must be nonnegative");
      }
    }
    return v.get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse, std::string("field '") + key + "': " + e.what());
  }
}

template <typename T>
T as(const json& v, const char* what) {
  try {
    return v.get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse, std::string(what) + ": " + e.what());
  }
}

json instance_json(const AnyInstance& inst) {
  if (const auto* k = std::get_if<KXorInstance>(&inst)) {
    json cs = json::array();
    for (const Clause& c : k->clauses()) {
      json row = c.vars;
      row.push_back(static_cast<int>(c.sign));
      cs.push_back(std::move(row));
    }
    return {{"kind", "kxor"}, {"n", k->n()}, {"k", k->k()}, {"constraints", std::move(cs)}};
  }
  const auto& p = std::get<PartitionedInstance>(inst);
  json cs = json::array();
  for (const PartConstraint& c : p.constraints()) {
    cs.push_back({c.part, c.u, c.v, static_cast<int>(c.sign)});
  }
  return {{"kind", "p2xor"}, {"n", p.n()}, {"ell", p.ell()}, {"constraints", std::move(cs)}};
}

json dictionary_json(const SubsetDictionary& d) {
  return {{"subset_size", d.subset_size}, {"subsets", d.subsets}};
}

Sign parse_sign(const json& v) {
  require(v.is_number_integer(), ErrorCode::kParse, "constraint sign must be an integer");
  const auto s = v.get<long long>();
  require(s == 1 || s == -1, ErrorCode::kParse, "constraint sign must be +1 or -1");
  return static_cast<Sign>(s);
}

std::uint32_t parse_index(const json& v) {
  require(v.is_number_unsigned(), ErrorCode::kParse, "indices must be nonnegative integers");
  const auto x = v.get<std::uint64_t>();
  require(x <= 0xFFFFFFFFULL, ErrorCode::kParse, "index out of range");
  return static_cast<std::uint32_t>(x);
}

json outcome_json(const CertOutcome& o) {
  return {{"status", status_name(o.status)}, {"certified_val_upper", o.certified_val_upper}};
}

CertOutcome outcome_from(const json& j) {
  return {parse_status(get<std::string>(j, "status")), get<double>(j, "certified_val_upper")};
}

json dual_json(const DualCert& d) {
  return {{"d_left", d.d_left}, {"d_right", d.d_right}, {"slack", d.slack}, {"bound", d.bound}};
}

DualCert dual_from(const json& j) {
  DualCert d;
  d.d_left = as<std::vector<double>>(field(j, "d_left"), "d_left");
  d.d_right = as<std::vector<double>>(field(j, "d_right"), "d_right");
  d.slack = get<double>(j, "slack");
  d.bound = get<double>(j, "bound");
  return d;
}

json light_json(const LightCertificate& l) {
  json blocks = json::array();
  for (const BlockCert& b : l.blocks) {
    blocks.push_back({{"j", b.j},
                      {"k", b.k},
                      {"size_j", b.size_j},
                      {"size_k", b.size_k},
                      {"rows", b.rows},
                      {"cols", b.cols},
                      {"norm_lower", b.norm.lower},
                      {"norm_upper", b.norm.upper},
                      {"method", norm_method_name(b.norm.method)},
                      {"bernstein_t", b.bernstein_t}});
  }
  const PhiBoundReport& r = l.phi;
  return {{"eps", l.eps},
          {"d", l.d},
          {"status", status_name(l.outcome.status)},
          {"phi",
           {{"phi2_term", r.phi2_term},
            {"phi1_bound", r.phi1_bound},
            {"phi_total_bound", r.phi_total_bound},
            {"threshold", r.threshold},
            {"implied_eps", r.implied_eps},
            {"certified_val_upper", r.certified_val_upper},
            {"ell", r.ell},
            {"m", r.m}}},
          {"partition",
           {{"alpha", l.partition.alpha},
            {"beta", l.partition.beta},
            {"L", l.partition.L},
            {"beta_clamped", l.partition.beta_clamped},
            {"class_sizes", l.partition.class_sizes}}},
          {"blocks", std::move(blocks)}};
}

LightCertificate light_from(const json& j) {
  LightCertificate l;
  l.eps = get<double>(j, "eps");
  l.d = get<double>(j, "d");
  const json& phi = field(j, "phi");
  PhiBoundReport& r = l.phi;
  r.phi2_term = get<double>(phi, "phi2_term");
  r.phi1_bound = get<double>(phi, "phi1_bound");
  r.phi_total_bound = get<double>(phi, "phi_total_bound");
  r.threshold = get<double>(phi, "threshold");
  r.implied_eps = get<double>(phi, "implied_eps");
  r.certified_val_upper = get<double>(phi, "certified_val_upper");
  r.ell = get<std::size_t>(phi, "ell");
  r.m = get<std::uint64_t>(phi, "m");
  l.outcome = {parse_status(get<std::string>(j, "status")), r.certified_val_upper};

  const json& p = field(j, "partition");
  WeightClassPartition& w = l.partition;
  w.alpha = get<double>(p, "alpha");
  w.beta = get<double>(p, "beta");
  w.L = get<std::uint32_t>(p, "L");
  w.beta_clamped = get<bool>(p, "beta_clamped");
  w.class_sizes = as<std::vector<std::uint64_t>>(field(p, "class_sizes"), "class_sizes");
  require(w.L <= 64, ErrorCode::kParse, "class count out of range");
  w.thresholds.resize(w.L + 1);
  for (std::uint32_t c = 0; c <= w.L; ++c) w.thresholds[c] = w.alpha * std::pow(w.beta, c);

  const json& blocks = field(j, "blocks");
  require(blocks.is_array(), ErrorCode::kParse, "blocks must be an array");
  for (const json& b : blocks) {
    BlockCert bc;
    bc.j = get<std::uint32_t>(b, "j");
    bc.k = get<std::uint32_t>(b, "k");
    bc.size_j = get<std::uint64_t>(b, "size_j");
    bc.size_k = get<std::uint64_t>(b, "size_k");
    bc.rows = get<std::size_t>(b, "rows");
    bc.cols = get<std::size_t>(b, "cols");
    bc.norm.lower = get<double>(b, "norm_lower");
    bc.norm.upper = get<double>(b, "norm_upper");
    bc.norm.method = parse_norm_method(get<std::string>(b, "method"));
    bc.bernstein_t = get<double>(b, "bernstein_t");
    bc.contribution =
        std::sqrt(static_cast<double>(bc.rows) * static_cast<double>(bc.cols)) * bc.norm.upper;
    l.blocks.push_back(bc);
  }
  return l;
}

json certificate_json(const Certificate& c, bool with_digest) {
  json j;
  j["schema"] = c.schema;
  j["tool_version"] = c.tool_version;
  j["instance_digest"] = c.instance_digest;
  j["instance_kind"] = c.instance_kind;
  j["reduction"] = c.reduction ? json{{"mode", c.reduction->mode},
                                      {"dictionary_digest", c.reduction->dictionary_digest}}
                               : json(nullptr);
  j["eps"] = c.eps;
  j["seed"] = c.seed;
  j["config"] = detail::to_json(c.config);
  j["outcome"] = outcome_json(c.outcome);
  j["combination"] = {{"case", c.combination.case_name},
                      {"m", c.combination.m},
                      {"light_bound", c.combination.light_bound},
                      {"heavy_bound", c.combination.heavy_bound},
                      {"combined", c.combination.combined}};
  j["decomposition"] = {{"m_light", c.decomposition.m_light},
                        {"m_heavy", c.decomposition.m_heavy},
                        {"d_cap", c.decomposition.d_cap},
                        {"heavy_groups", c.decomposition.heavy_groups}};
  j["light"] = c.light ? light_json(*c.light) : json(nullptr);
  if (c.heavy) {
    j["heavy"] = {{"eps", c.heavy->eps},
                  {"status", status_name(c.heavy->outcome.status)},
                  {"certified_val_upper", c.heavy->outcome.certified_val_upper},
                  {"rows", c.heavy->rows},
                  {"cols", c.heavy->cols},
                  {"dual", dual_json(c.heavy->dual)}};
  } else {
    j["heavy"] = nullptr;
  }
  if (with_digest) j["digest"] = c.digest;
  return j;
}

}  // namespace

const char* instance_kind(const AnyInstance& inst) {
  return std::holds_alternative<KXorInstance>(inst) ? "kxor" : "p2xor";
}

std::string instance_to_json(const AnyInstance& inst, int indent,
                             const SubsetDictionary* dictionary) {
  json j = instance_json(inst);
  if (dictionary != nullptr) j["dictionary"] = dictionary_json(*dictionary);
  return j.dump(indent);
}

LoadedInstance instance_from_json(const std::string& text) {
  const json j = detail::parse_json(text, "instance");
  const auto kind = get<std::string>(j, "kind");
  const auto n = get<std::size_t>(j, "n");
  const json& cs = field(j, "constraints");
  require(cs.is_array(), ErrorCode::kParse, "constraints must be an array");
  LoadedInstance out{KXorInstance(2, 2, {}), std::nullopt};
  if (kind == "kxor") {
    const auto k = get<std::size_t>(j, "k");
    std::vector<Clause> clauses;
    clauses.reserve(cs.size());
    for (const json& row : cs) {
      require(row.is_array() && row.size() == k + 1, ErrorCode::kParse,
              "each kxor constraint must list k indices and a sign");
      Clause c;
      for (std::size_t t = 0; t < k; ++t) c.vars.push_back(parse_index(row[t]));
      c.sign = parse_sign(row[k]);
      clauses.push_back(std::move(c));
    }
    out.instance = KXorInstance(n, k, std::move(clauses));
  } else if (kind == "p2xor") {
    const auto ell = get<std::size_t>(j, "ell");
    std::vector<PartConstraint> constraints;
    constraints.reserve(cs.size());
    for (const json& row : cs) {
      require(row.is_array() && row.size() == 4, ErrorCode::kParse,
              "each p2xor constraint must be [part, u, v, sign]");
      constraints.push_back(
          {parse_index(row[0]), parse_index(row[1]), parse_index(row[2]), parse_sign(row[3])});
    }
    out.instance = PartitionedInstance(n, ell, std::move(constraints));
  } else {
    fail(ErrorCode::kParse, "unknown instance kind '" + kind + "'");
  }
  if (auto it = j.find("dictionary"); it != j.end() && !it->is_null()) {
    SubsetDictionary d;
    d.subset_size = get<std::size_t>(*it, "subset_size");
    d.subsets = as<std::vector<std::vector<Vertex>>>(field(*it, "subsets"), "subsets");
    out.dictionary = std::move(d);
  }
  return out;
}

std::string instance_digest(const AnyInstance& inst) {
  return sha256_hex(instance_json(inst).dump());
}

std::string dictionary_digest(const SubsetDictionary& dictionary) {
  return sha256_hex(dictionary_json(dictionary).dump());
}

std::string decomposition_to_json(const Decomposition& dec, int indent) {
  json heavy_left = json::array();
  for (const HeavyLabel& h : dec.heavy.left) heavy_left.push_back({h.part, h.center});
  json heavy_cs = json::array();
  for (const BipartiteConstraint& c : dec.heavy.constraints) {
    heavy_cs.push_back({c.left, c.right, static_cast<int>(c.sign)});
  }
  json prov = json::array();
  for (const Provenance& p : dec.provenance) {
    if (p.side == Side::kLight) {
      prov.push_back({"light", p.index});
    } else {
      prov.push_back({"heavy", p.group, p.index});
    }
  }
  json j = {{"d_cap", dec.d_cap},
            {"m_light", dec.m_light()},
            {"m_heavy", dec.m_heavy()},
            {"light", instance_json(dec.light)},
            {"heavy",
             {{"left", std::move(heavy_left)},
              {"n_right", dec.heavy.n_right},
              {"constraints", std::move(heavy_cs)}}},
            {"provenance", std::move(prov)}};
  return j.dump(indent);
}

std::string certificate_to_json(const Certificate& cert, int indent) {
  return certificate_json(cert, true).dump(indent);
}

Certificate certificate_from_json(const std::string& text) {
  const json j = detail::parse_json(text, "certificate");
  Certificate c;
  c.schema = get<std::string>(j, "schema");
  c.tool_version = get<std::string>(j, "tool_version");
  c.instance_digest = get<std::string>(j, "instance_digest");
  c.instance_kind = get<std::string>(j, "instance_kind");
  const json& red = field(j, "reduction");
  if (!red.is_null()) {
    c.reduction = ReductionInfo{get<std::string>(red, "mode"),
                                get<std::string>(red, "dictionary_digest")};
  }
  c.eps = get<double>(j, "eps");
  c.seed = get<std::uint64_t>(j, "seed");
  c.config = detail::config_from(field(j, "config"));
  c.outcome = outcome_from(field(j, "outcome"));
  const json& comb = field(j, "combination");
  c.combination = {get<std::string>(comb, "case"), get<std::uint64_t>(comb, "m"),
                   get<double>(comb, "light_bound"), get<double>(comb, "heavy_bound"),
                   get<double>(comb, "combined")};
  const json& dec = field(j, "decomposition");
  c.decomposition = {get<std::uint64_t>(dec, "m_light"), get<std::uint64_t>(dec, "m_heavy"),
                     get<std::uint32_t>(dec, "d_cap"), get<std::uint64_t>(dec, "heavy_groups")};
  const json& light = field(j, "light");
  if (!light.is_null()) c.light = light_from(light);
  const json& heavy = field(j, "heavy");
  if (!heavy.is_null()) {
    HeavyCertificate h;
    h.eps = get<double>(heavy, "eps");
    h.outcome = {parse_status(get<std::string>(heavy, "status")),
                 get<double>(heavy, "certified_val_upper")};
    h.rows = get<std::size_t>(heavy, "rows");
    h.cols = get<std::size_t>(heavy, "cols");
    h.dual = dual_from(field(heavy, "dual"));
    c.heavy = std::move(h);
  }
  c.digest = get<std::string>(j, "digest");
  return c;
}

std::string certificate_digest(const Certificate& cert) {
  return sha256_hex(certificate_json(cert, false).dump());
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::kIo, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), ErrorCode::kIo, "cannot open '" + path + "' for writing");
  out << content;
  if (!content.empty() && content.back() != '\n') out << '\n';
  require(out.good(), ErrorCode::kIo, "failed writing '" + path + "'");
}

}  // namespace xorcert
