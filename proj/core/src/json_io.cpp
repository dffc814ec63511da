#include "qdisk/json_io.hpp"

#include "qdisk/errors.hpp"

namespace qdisk {

Json to_json(const Symbol& f) {
  Json coeffs = Json::array();
  for (int n = -f.band(); n <= f.band(); ++n) {
    const cplx v = f.coeff(n);
    if (v == cplx{0.0, 0.0}) continue;
    coeffs.push_back({{"n", n}, {"re", v.real()}, {"im", v.imag()}});
  }
  return {{"coeffs", std::move(coeffs)}};
}

Symbol symbol_from_json(const Json& j) {
  if (!j.contains("coeffs")) throw ConfigError("symbol JSON: missing coeffs");
  std::map<int, cplx> coeffs;
  for (const auto& e : j.at("coeffs"))
    coeffs[e.at("n").get<int>()] +=
        cplx{e.at("re").get<double>(), e.value("im", 0.0)};
  return Symbol(std::move(coeffs)).trimmed();
}

Json to_json(const CompactOp& a) {
  Json entries = Json::array();
  for (int k = 0; k < a.support_rows(); ++k)
    for (int l = 0; l < a.support_cols(); ++l) {
      const cplx v = a.entry(k, l);
      if (v == cplx{0.0, 0.0}) continue;
      entries.push_back({{"k", k}, {"l", l}, {"re", v.real()}, {"im", v.imag()}});
    }
  return {{"dim", a.dim()}, {"entries", std::move(entries)}};
}

CompactOp compact_from_json(const Json& j) {
  const int dim = j.at("dim").get<int>();
  CompactOp a(dim);
  for (const auto& e : j.value("entries", Json::array())) {
    const int k = e.at("k").get<int>(), l = e.at("l").get<int>();
    a.set(k, l, a.entry(k, l) + cplx{e.at("re").get<double>(), e.value("im", 0.0)});
  }
  return a;
}

Json to_json(const ToeplitzElem& a) {
  return {{"symbol", to_json(a.symbol)}, {"compact", to_json(a.compact)}};
}

ToeplitzElem toeplitz_from_json(const Json& j) {
  return {symbol_from_json(j.at("symbol")), compact_from_json(j.at("compact"))};
}

Json to_json(const NormReport& r) {
  return {{"kind", r.kind},
          {"params", {{"M", r.M}, {"N", r.N}, {"j", r.j}, {"l", r.l}}},
          {"value", r.value}};
}

Json to_json(const IndexResult& r) {
  return {{"ker_dim", r.ker_dim},
          {"coker_dim", r.coker_dim},
          {"index", r.index},
          {"determinate", r.determinate},
          {"gap", r.gap},
          {"singular_values", r.singular_values}};
}

Json to_json(const MobiusReport& r) {
  Json f0 = Json::array();
  for (const cplx& v : r.f0) f0.push_back({{"re", v.real()}, {"im", v.imag()}});
  return {{"dim", r.dim},
          {"central", r.central},
          {"w_symbol", to_json(r.w_symbol)},
          {"w_tail_bound", r.w_tail_bound},
          {"w_compact_max", r.w_compact_max},
          {"f0", std::move(f0)},
          {"f0_norm_deficit", r.f0_norm_deficit},
          {"kernel_residual", r.kernel_residual},
          {"isometry_residual", r.isometry_residual},
          {"conjugation_residual", r.conjugation_residual},
          {"gram_residual", r.gram_residual},
          {"delta_k_identity_residual", r.delta_k_identity_residual},
          {"decay_profile", r.decay_profile}};
}

}  // namespace qdisk
