// Copyright 2026 The Twinscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "twinscope/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <optional>

#include "twinscope/mds.hpp"
#include "twinscope/report.hpp"
#include "twinscope/schmidt.hpp"
#include "twinscope/state_spec.hpp"
#include "twinscope/twins.hpp"
#include "twinscope/verify.hpp"

namespace twinscope::cli {

using linalg::Matrix;

namespace {

struct Options {
  std::string t;
  std::string weights;
  std::string input;
  std::string a1;
  std::string a2;
  double tol = linalg::kRankTol;
  std::uint64_t seed = 1;
};

StateSpec read_state(const Options& opt) {
  const int given = !opt.t.empty() + !opt.weights.empty() + !opt.input.empty();
  if (given != 1) throw ValidationError("exactly one of --t, --weights, --input must be given");
  StateSpec spec;
  if (!opt.t.empty()) {
    const auto v = parse_real_list(opt.t);
    if (v.size() != 3) throw ValidationError("--t expects three comma-separated components");
    spec.value = mds::TVector{v[0], v[1], v[2]};
  } else if (!opt.weights.empty()) {
    const auto v = parse_real_list(opt.weights);
    if (v.size() != 4) throw ValidationError("--weights expects four comma-separated values w0,w1,w2,w3");
    spec.value = mds::BellWeights{v[0], v[1], v[2], v[3]};
  } else {
    spec = load_state_file(opt.input);
  }
  validate(spec);
  if (auto* p = std::get_if<PureState>(&spec.value)) p->phi /= p->phi.norm();
  return spec;
}

Json input_json(const StateSpec& spec) {
  Json j;
  j["kind"] = kind_name(spec);
  if (const auto* t = std::get_if<mds::TVector>(&spec.value)) {
    j["t"] = {t->t1, t->t2, t->t3};
  } else if (const auto* w = std::get_if<mds::BellWeights>(&spec.value)) {
    j["weights"] = {w->w0, w->w1, w->w2, w->w3};
  } else if (const auto* m = std::get_if<MatrixState>(&spec.value)) {
    j["source"] = spec.source;
    j["matrix"] = to_json(m->rho);
  } else {
    j["source"] = spec.source;
    j["amplitudes"] = to_json(std::get<PureState>(spec.value).phi);
  }
  return j;
}

Json t_json(const mds::TVector& t) { return Json::array({t.t1, t.t2, t.t3}); }
Json w_json(const mds::BellWeights& w) { return Json::array({w.w0, w.w1, w.w2, w.w3}); }

// Bell-diagonal coordinates of the input; raw MDS matrices are canonicalized
// first. Empty when the state is not MDS.
struct BellView {
  mds::TVector t;
  std::optional<mds::CanonicalForm> canonical;
};

std::optional<BellView> bell_view(const StateSpec& spec, double tol) {
  if (const auto* t = std::get_if<mds::TVector>(&spec.value)) return BellView{*t, std::nullopt};
  if (const auto* w = std::get_if<mds::BellWeights>(&spec.value)) return BellView{mds::t_from_weights(*w), std::nullopt};
  const Matrix rho = density_matrix(spec);
  if (!mds::is_mds(rho, tol)) return std::nullopt;
  mds::CanonicalForm cf = mds::canonicalize(rho, tol);
  return BellView{cf.t, cf};
}

Json canonical_json(const mds::CanonicalForm& cf) {
  Json j;
  j["u1"] = to_json(cf.u1);
  j["u2"] = to_json(cf.u2);
  j["t"] = t_json(cf.t);
  j["residual"] = number(cf.residual);
  return j;
}

Json class_json(const mds::MdsClass& cls) {
  Json j;
  j["verdict"] = mds::describe(cls);
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, mds::BellVertex>) {
          j["kind"] = "BellVertex";
          j["bell_index"] = k.index;
        } else if constexpr (std::is_same_v<K, mds::BinaryEdge>) {
          j["kind"] = "BinaryEdge";
          j["axis"] = k.axis;
          j["case"] = k.edge_case == mds::EdgeCase::A ? "A" : "B";
          j["edge_parameter"] = k.parameter;
        } else if constexpr (std::is_same_v<K, mds::GenericInterior>) {
          j["kind"] = "GenericInterior";
        } else {
          j["kind"] = "NonState";
        }
      },
      cls.kind);
  j["weights"] = w_json(cls.weights);
  j["detail"] = cls.detail;
  return j;
}

Json pair_json(const twins::ObservablePair& p) {
  Json j;
  j["a1"] = pauli_json(p.a1);
  j["a2"] = pauli_json(p.a2);
  return j;
}

Json space_json(const twins::TwinSpace& s) {
  Json j;
  j["dimension"] = s.dimension;
  j["has_nontrivial"] = s.has_nontrivial;
  j["basis_pauli_coefficients"] = Json::array();
  for (const auto& p : s.basis) j["basis_pauli_coefficients"].push_back(pair_json(p));
  j["singular_value_gap"] = number(s.singular_value_gap);
  j["well_conditioned"] = s.well_conditioned;
  return j;
}

Matrix observable_from(const std::string& text, const char* flag) {
  if (text.empty()) throw ValidationError(std::string("correlate requires ") + flag);
  const auto v = parse_real_list(text);
  if (v.size() != 4) throw ValidationError(std::string(flag) + " expects alpha,beta1,beta2,beta3");
  return twins::from_pauli({v[0], v[1], v[2], v[3]});
}

int cmd_classify(const StateSpec& spec, const Options& opt, Json& result, Json& diag) {
  const auto view = bell_view(spec, opt.tol);
  if (!view) throw ValidationError("classify: the state does not have maximally disordered subsystems");
  if (view->canonical) result["canonical_form"] = canonical_json(*view->canonical);
  result["t"] = t_json(view->t);
  const mds::StateVerdict sv = mds::is_state(view->t, opt.tol);
  diag["min_weight"] = sv.min_weight;
  diag["min_eigenvalue"] = sv.min_eigenvalue;
  const mds::MdsClass cls = mds::classify(view->t, opt.tol);
  result["classification"] = class_json(cls);
  return std::holds_alternative<mds::NonState>(cls.kind) ? kInputError : kOk;
}

int cmd_schmidt(const StateSpec& spec, const Options& opt, Json& result, Json& diag) {
  const Matrix rho = density_matrix(spec);
  const schmidt::OperatorSchmidt os = schmidt::operator_schmidt(rho, opt.tol);
  Json op;
  op["hs_norm"] = linalg::hs_norm(rho);
  op["coefficients"] = os.coefficients;
  op["schmidt_rank"] = os.schmidt_rank;
  op["multiplicities"] = os.multiplicities;
  op["left_ops_pauli"] = Json::array();
  op["right_ops_pauli"] = Json::array();
  for (std::size_t k = 0; k < os.left_ops.size(); ++k) {
    op["left_ops_pauli"].push_back(pauli_json(os.left_ops[k]));
    op["right_ops_pauli"].push_back(pauli_json(os.right_ops[k]));
  }
  result["operator_schmidt"] = op;
  diag["reconstruction_residual"] = linalg::hs_norm(schmidt::reconstruct(os, linalg::hs_norm(rho)) - rho);

  if (const auto* p = std::get_if<PureState>(&spec.value)) {
    const schmidt::PureSchmidt ps = schmidt::pure_schmidt(p->phi, opt.tol);
    Json pj;
    pj["coefficients"] = ps.coefficients;
    pj["schmidt_rank"] = ps.schmidt_rank;
    pj["multiplicities"] = ps.multiplicities;
    pj["left_vectors"] = Json::array();
    pj["right_vectors"] = Json::array();
    for (std::size_t k = 0; k < ps.left.size(); ++k) {
      pj["left_vectors"].push_back(to_json(ps.left[k]));
      pj["right_vectors"].push_back(to_json(ps.right[k]));
    }
    const schmidt::AntiunitaryMap ua = schmidt::correlation_operator(ps);
    pj["correlation_operator"] = {{"unitary_part", to_json(ua.unitary_part)}, {"partial", ua.partial}};
    result["pure_schmidt"] = pj;
    diag["pure_reconstruction_residual"] = (schmidt::reconstruct(ps) - p->phi).norm();
  }
  return kOk;
}

int cmd_twins(const StateSpec& spec, const Options& opt, Json& result, Json& diag) {
  const Matrix rho = density_matrix(spec);
  const twins::TwinSpace oracle = twins::twin_space(rho, opt.tol);
  result["twin_space"] = space_json(oracle);
  if (!oracle.well_conditioned) diag["warning"] = "rank decision is within two orders of magnitude of the tolerance";

  const auto view = bell_view(spec, opt.tol);
  if (!view) return kOk;
  const mds::MdsClass cls = mds::classify(view->t, opt.tol);
  result["classification"] = class_json(cls);
  if (!std::holds_alternative<mds::BinaryEdge>(cls.kind)) return kOk;

  twins::TwinSpace analytic = twins::analytic_edge_twins(cls);
  if (view->canonical) {
    // Pull the canonical-frame basis back to the frame of the input.
    std::vector<twins::ObservablePair> pairs;
    for (const auto& p : analytic.basis)
      pairs.push_back({view->canonical->u1.adjoint() * p.a1 * view->canonical->u1,
                       view->canonical->u2.adjoint() * p.a2 * view->canonical->u2});
    analytic = twins::span_of(pairs);
  }
  result["analytic_edge_twins"] = space_json(analytic);
  const double agreement = twins::subspace_residual(analytic, oracle);
  diag["analytic_agreement_residual"] = number(agreement);
  if (!(agreement <= 1e-9)) throw ConsistencyError("twins: analytic edge twins disagree with the oracle");
  return kOk;
}

int cmd_separability(const StateSpec& spec, const Options& opt, Json& result, Json&) {
  const Matrix rho = density_matrix(spec);
  const twins::PptVerdict v = twins::ppt_separable(rho, opt.tol);
  result["separable"] = v.separable;
  result["min_partial_transpose_eigenvalue"] = v.min_eigenvalue;
  for (const auto& form : twins::biorthogonal_separable_forms())
    if ((form.bell_form - rho).cwiseAbs().maxCoeff() <= 1e-12) result["product_decomposition"] = form.description;
  return kOk;
}

int cmd_correlate(const StateSpec& spec, const Options& opt, Json& result, Json& diag) {
  const Matrix rho = density_matrix(spec);
  const twins::ObservablePair pair{observable_from(opt.a1, "--a1"), observable_from(opt.a2, "--a2")};
  const twins::CorrelationReport rep = twins::distant_correlation(pair, rho, opt.tol);
  result["a1"] = pauli_json(pair.a1);
  result["a2"] = pauli_json(pair.a2);
  result["a1_eigenvalues"] = rep.a1_eigenvalues;
  result["a2_eigenvalues"] = rep.a2_eigenvalues;
  result["degenerate"] = rep.degenerate;
  result["joint_distribution"] = {rep.joint[0], rep.joint[1]};
  result["mismatch_probability"] = rep.mismatch_probability;
  result["expectation_gap"] = rep.expectation_gap;
  const twins::TwinCheck tc = twins::is_twin_pair(pair, rho, opt.tol);
  result["is_twin_pair"] = tc.is_twin;
  diag["twin_residual"] = tc.residual;
  return kOk;
}

int cmd_canonicalize(const StateSpec& spec, const Options& opt, Json& result, Json&) {
  const mds::CanonicalForm cf = mds::canonicalize(density_matrix(spec), opt.tol);
  result["canonical_form"] = canonical_json(cf);
  return cf.residual <= 1e-9 ? kOk : kConsistencyFailure;
}

int cmd_verify(const StateSpec& spec, const Options& opt, Json& result, Json& diag) {
  std::vector<PropertyResult> props;
  if (const auto* p = std::get_if<PureState>(&spec.value)) {
    props = verify_pure(p->phi, opt.seed, opt.tol);
  } else if (const auto* m = std::get_if<MatrixState>(&spec.value)) {
    props = verify_matrix(m->rho, opt.seed, opt.tol);
  } else {
    const auto view = bell_view(spec, opt.tol);
    props = verify_bell_diagonal(view->t, opt.seed, opt.tol);
  }
  for (auto& r : verify_global(opt.seed, opt.tol)) props.push_back(std::move(r));

  Json list = Json::array();
  int failed = 0;
  for (const auto& r : props) {
    Json j;
    j["name"] = r.name;
    j["scope"] = r.scope;
    j["passed"] = r.passed;
    j["residual"] = number(r.residual);
    j["detail"] = r.detail;
    list.push_back(j);
    if (!r.passed) ++failed;
  }
  result["properties"] = list;
  result["passed"] = static_cast<int>(props.size()) - failed;
  result["failed"] = failed;
  diag["seed"] = opt.seed;
  return failed == 0 ? kOk : kConsistencyFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Twin observables and Schmidt decompositions of two-qubit states", "twinscope"};
  app.require_subcommand(1, 1);
  Options opt;

  using Handler = int (*)(const StateSpec&, const Options&, Json&, Json&);
  const std::vector<std::tuple<std::string, std::string, Handler>> commands = {
      {"classify", "Classify a Bell-diagonal state on the tetrahedron", cmd_classify},
      {"schmidt", "Operator (and pure-state) Schmidt decomposition", cmd_schmidt},
      {"twins", "Twin-observable space, oracle and closed form", cmd_twins},
      {"verify", "Run the invariant suite relevant to the state", cmd_verify},
      {"separability", "Positive-partial-transpose verdict", cmd_separability},
      {"correlate", "Joint outcome statistics of an observable pair", cmd_correlate},
      {"canonicalize", "Local unitaries to Bell-diagonal form", cmd_canonicalize},
  };
  for (const auto& [name, help, handler] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--t", opt.t, "t-vector t1,t2,t3");
    sub->add_option("--weights", opt.weights, "Bell weights w0,w1,w2,w3 (singlet first)");
    sub->add_option("--input", opt.input, "state file ('matrix 4 4' or 'pure 4' header)");
    sub->add_option("--tol", opt.tol, "rank and classification tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--seed", opt.seed, "seed for sampled checks");
    if (name == "correlate") {
      sub->add_option("--a1", opt.a1, "first-qubit observable alpha,beta1,beta2,beta3");
      sub->add_option("--a2", opt.a2, "second-qubit observable alpha,beta1,beta2,beta3");
    }
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "twinscope: " << e.what() << "\n";
    return kInputError;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  Handler handler = nullptr;
  for (const auto& [name, help, h] : commands)
    if (name == chosen->get_name()) handler = h;

  try {
    const StateSpec spec = read_state(opt);
    Json doc;
    doc["command"] = chosen->get_name();
    doc["version"] = kVersion;
    doc["input"] = input_json(spec);
    Json result = Json::object();
    Json diag = Json::object();
    diag["tolerance"] = opt.tol;
    diag["input_tolerance"] = kInputTol;
    const int code = handler(spec, opt, result, diag);
    doc["result"] = result;
    doc["diagnostics"] = diag;
    out << serialize(doc);
    if (code == kConsistencyFailure) err << "twinscope: " << chosen->get_name() << ": consistency check failed\n";
    if (code == kInputError) err << "twinscope: " << chosen->get_name() << ": input is not a state\n";
    return code;
  } catch (const ValidationError& e) {
    err << "twinscope: " << e.what() << "\n";
    return kInputError;
  } catch (const ConsistencyError& e) {
    err << "twinscope: internal consistency failure: " << e.what() << "\n";
    return kConsistencyFailure;
  }
}

}  // namespace twinscope::cli
