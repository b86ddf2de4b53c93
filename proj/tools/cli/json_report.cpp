#include "json_report.hpp"

namespace markoff {

void to_json(json& j, const Triple& t) { j = json::array({t.x, t.y, t.z}); }

void to_json(json& j, const CycleType& c) {
  json lengths = json::array();
  for (auto [len, mult] : c.lengths) lengths.push_back({{"length", len}, {"count", mult}});
  j = {{"lengths", lengths}, {"cycles", c.cycles()}, {"points", c.points()}, {"order", c.order()}};
}

void to_json(json& j, const CycleCensus& c) {
  j = {{"x", c.x},
       {"class", to_string(c.cls)},
       {"omega_order", c.omega_order},
       {"d_predicted", c.d_predicted},
       {"conic_size", c.conic_size},
       {"measured", c.measured},
       {"matches", c.matches}};
}

namespace {
json multiplicities(const std::vector<std::tuple<u64, u64, u64>>& rows) {
  json out = json::array();
  for (auto [d, seen, want] : rows) out.push_back({{"d", d}, {"observed", seen}, {"expected", want}});
  return out;
}
}  // namespace

void to_json(json& j, const CensusReport& r) {
  j = {{"p", r.p},
       {"rows", r.rows},
       {"hyperbolic_multiplicities", multiplicities(r.hyperbolic_multiplicities)},
       {"elliptic_multiplicities", multiplicities(r.elliptic_multiplicities)},
       {"rotation_order", r.rotation_order},
       {"rotation_order_expected", r.rotation_order_expected},
       {"mismatches", r.mismatches},
       {"pass", r.pass()}};
}

void to_json(json& j, const PrimitivityResult& r) {
  j = {{"transitive", r.transitive},
       {"primitive", r.primitive},
       {"witness", r.witness},
       {"pairs_tested", r.pairs_tested}};
}

void to_json(json& j, const RelationReport& r) {
  j = {{"n", r.n},
       {"points", r.points},
       {"r3_failures", r.r3_failures},
       {"t132_failures", r.t132_failures},
       {"pass", r.pass()}};
}

void to_json(json& j, const CertificateChain& c) {
  json parities = json::object();
  for (auto [g, par] : c.parities) parities[to_string(g)] = to_string(par);
  j = {{"p", c.p},
       {"degree", c.degree},
       {"transitive", c.transitive},
       {"orbit_sizes", c.orbit_sizes},
       {"primitive", c.primitive},
       {"witness", c.primitivity_witness},
       {"rotation_order", c.rotation_order},
       {"parities", parities},
       {"all_even", c.all_even},
       {"parity_class", to_string(c.parity_class)},
       {"conclusion", to_string(c.conclusion)},
       {"expected_alt", c.expected_alt},
       {"parity_matches_expectation", (c.parity_class == Conclusion::Alt) == c.expected_alt}};
  if (c.pcycle_exponent) {
    j["pcycle_exponent"] = *c.pcycle_exponent;
    j["pcycle_ok"] = c.pcycle_ok;
  }
  if (c.fixed_points) {
    j["fixed_points"] = *c.fixed_points;
    j["fixed_points_expected"] = c.fixed_points_expected;
    j["fixed_points_ok"] = c.fixed_points_ok;
  }
  if (!c.failed_stage.empty()) j["failed_stage"] = c.failed_stage;
}

json certificate_timings(const CertificateChain& c) {
  json t = json::object();
  for (const auto& [stage, seconds] : c.timings) t[stage] = seconds;
  return t;
}

void to_json(json& j, const OrbitCensus& c) {
  json hist = json::array();
  for (auto [size, count] : c.histogram) hist.push_back({{"orbit_size", size}, {"count", count}});
  j = {{"points", c.points},
       {"orbits", c.count()},
       {"largest", c.largest()},
       {"orbit", c.start_orbit},
       {"transitive", c.transitive()},
       {"histogram", hist}};
}

void to_json(json& j, const ProductOrbitReport& r) {
  j = {{"n", r.n}, {"primes", r.primes}, {"empty", r.empty}};
  if (r.solutions.points > 0 || r.empty) j["solutions"] = r.solutions;
  if (r.blocks.points > 0 || r.empty) j["blocks"] = r.blocks;
}

void to_json(json& j, const JointSignCount& c) {
  j = {{"p", c.p},
       {"x", c.x},
       {"construction", to_string(c.construction)},
       {"d", c.d},
       {"m", c.m},
       {"N_mm", c.n(-1, -1)},
       {"N_mp", c.n(-1, 1)},
       {"N_pm", c.n(1, -1)},
       {"N_pp", c.n(1, 1)},
       {"zeros", c.zeros},
       {"M1", c.M1},
       {"M2", c.M2},
       {"M12", c.M12},
       {"root_counts", c.root_counts},
       {"coefficients_in_base", c.coefficients_in_base},
       {"weil_ok", c.weil_ok},
       {"bound", c.bound},
       {"bound_applicable", c.bound_applicable},
       {"pass", c.pass}};
}

void to_json(json& j, const Order4Witness& w) {
  j = {{"triple", w.t},
       {"order_x", w.order_x},
       {"order_y", w.order_y},
       {"legendre_x_plus_2", w.legendre_x_plus_2},
       {"legendre_x_minus_2", w.legendre_x_minus_2},
       {"legendre_y_plus_2", w.legendre_y_plus_2},
       {"legendre_y_minus_2", w.legendre_y_minus_2}};
}

void to_json(json& j, const OrderRecord& r) {
  j = {{"p", r.p},       {"residue", r.residue}, {"o", r.order},
       {"group", r.group}, {"divides", r.divides}, {"large", r.large}};
}

void to_json(json& j, const Checkpoint& c) {
  j = {{"x", c.x},
       {"primes", c.primes},
       {"below_C_sqrt_x", c.below_sqrt_x},
       {"below_C_sqrt_p", c.below_sqrt_p},
       {"ratio_C_sqrt_x", c.ratio_sqrt_x()},
       {"ratio_C_sqrt_p", c.ratio_sqrt_p()}};
}

void to_json(json& j, const ScanSummary& s) {
  j = {{"x_max", s.x_max},
       {"C", s.C},
       {"spacing", s.spacing},
       {"checkpoints", s.checkpoints},
       {"total", s.total},
       {"exceptional", s.total.below_sqrt_x},
       {"divisibility_failures", s.divisibility_failures},
       {"delta", ScanSummary::kDelta}};
}

void to_json(json& j, const BijectionReport& r) {
  j = {{"p", r.p},
       {"group_order", r.group_order},
       {"pairs", r.pairs},
       {"q_minus2_pairs", r.q_minus2_pairs},
       {"generating_pairs", r.generating_pairs},
       {"expected_fiber", r.expected_fiber},
       {"fibers", r.fibers},
       {"blocks_hit", r.blocks_hit},
       {"bad_fibers", r.bad_fibers},
       {"zero_triple_pairs", r.zero_triple_pairs},
       {"zero_triple_generating", r.zero_triple_generating},
       {"commutator_checked", r.commutator_checked},
       {"commutator_mismatches", r.commutator_mismatches},
       {"markoff_identity_mismatches", r.markoff_identity_mismatches},
       {"pass", r.pass}};
}

void to_json(json& j, const NielsenReport& r) {
  j = {{"p", r.p},
       {"pairs_checked", r.pairs_checked},
       {"failures", {{"r", r.failures[0]}, {"s", r.failures[1]}, {"t", r.failures[2]}}},
       {"permutation_matches",
        {{"r", r.permutation_matches[0]}, {"s", r.permutation_matches[1]}, {"t", r.permutation_matches[2]}}},
       {"pass", r.pass}};
}

}  // namespace markoff
