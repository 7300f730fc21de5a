#include "bracketlab/report.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "bracketlab/dirac.hpp"

namespace bracketlab {

using json = nlohmann::ordered_json;

Command parse_command(const std::string& s) {
  if (s == "check") return Command::check;
  if (s == "cohomology") return Command::cohomology;
  if (s == "graded") return Command::graded;
  if (s == "search") return Command::search;
  throw std::invalid_argument("unknown command '" + s + "'");
}

std::string command_str(Command c) {
  switch (c) {
    case Command::check: return "check";
    case Command::cohomology: return "cohomology";
    case Command::graded: return "graded";
    case Command::search: return "search";
  }
  return "?";
}

namespace {

struct McStatus {
  bool ok = true;
  std::string defect;

  void add(const std::string& what) {
    ok = false;
    defect += (defect.empty() ? "" : "; ") + what;
  }
};

McStatus mc_status(const StructureDef& d) {
  McStatus s;
  const std::string& k = d.kind;
  if (k == "lie_algebroid" || k == "lie_n_algebroid") {
    Derivation D = mc_defect(k == "lie_algebroid" ? build_q(d.algebroid) : build_q_n(d.lna));
    if (!D.is_zero()) s.add("[Q,Q] = " + D.str());
  } else if (k == "poisson") {
    int n = d.base_dim;
    TablePtr t = bialgebroid_table(n, n);
    GElement Pi = lift_algebroid(tangent_algebroid(n), t);
    GElement pihat = multivector(d.pi, t);
    GElement jac = sym_bracket(multivector_hamiltonian(Pi, pihat), pihat);
    if (!jac.is_zero()) s.add("[pi,pi] = " + jac.str());
  } else if (k == "poisson_nijenhuis") {
    PNCheck c = pn_check(PNData{d.pi, d.N});
    if (!c.ok()) s.add(c.failures());
  } else if (k == "b_poisson" || k == "lie_bialgebroid" || k == "dirac_split") {
    BialgebroidPair p;
    try {
      p = pair_of(d);
    } catch (const MCError& e) {
      s.add(e.what());
      return s;
    }
    std::string pd = pair_defect(p);
    if (!pd.empty()) s.add(pd + ": {Pi+f,Pi+f} = " + sym_bracket(p.Pi + p.f, p.Pi + p.f).str());
    if (s.ok && d.has_graph) {
      GElement g = dirac_mc_defect(p, dirac_graph(d.graph, p.table));
      if (!g.is_zero()) s.add("graph is not Dirac: d_L A + 1/2 [A,A] = " + g.str());
    }
  } else if (k == "courant") {
    CourantTheta ct = courant_theta(d.courant);
    if (!ct.defect.is_zero()) s.add("{Theta,Theta} = " + ct.defect.str());
  } else if (k == "quadratic_lie") {
    if (!d.quad.tau.is_representation(d.quad.g)) s.add("representation matrices do not represent the algebra");
    if (s.ok) {
      CourantTheta ct = courant_theta(quadratic_lie_courant(d.quad.g, d.quad.pairing, d.quad.tau));
      if (!ct.defect.is_zero()) s.add("{Theta,Theta} = " + ct.defect.str());
    }
  }
  return s;
}

std::optional<std::vector<int>> detect_order(const StructureDef& d) {
  if (d.kind == "lie_algebroid") return std::vector<int>{fixed_point_order(build_q(d.algebroid), d.point)};
  if (d.kind == "lie_n_algebroid") {
    auto o = fixed_point_type(build_q_n(d.lna), d.point);
    return std::vector<int>{o.k, o.l};
  }
  if (d.kind == "courant") return std::vector<int>{courant_fixed_point_order(courant_theta(d.courant).theta, d.point)};
  return std::nullopt;
}

std::vector<int> b_k(const StructureDef& d, const QuotientComplex& qc) {
  if (d.kind != "b_poisson") throw std::invalid_argument("reduced cohomology is defined for kind b_poisson only");
  return b_k_subspace(qc, d.hypersurface);
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::optional<Structure> perturbed_structure(const StructureDef& def, const std::string& path, int degree_bound) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read perturbation file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  json j;
  try {
    j = json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON in perturbation file: ") + e.what());
  }
  if (j.is_object() && j.contains("translate") && !j.contains("kind")) {
    const json& v = j["translate"];
    if (!v.is_array() || (int)v.size() != def.base_dim)
      throw ParseError("field 'translate': dimension mismatch: expected " + std::to_string(def.base_dim) + " entries");
    RVec w;
    for (const auto& e : v) w.push_back(e.is_string() ? parse_rational(e.get<std::string>()) : Rational(e.get<long>()));
    auto s = structure_of(def);
    if (!s) return std::nullopt;
    return gauge_translate(*s, w);
  }
  StructureDef p = parse_structure(j, degree_bound);
  if (p.kind != def.kind || p.base_dim != def.base_dim)
    throw ParseError("perturbation must have the same kind and base_dim as the reference");
  McStatus m = mc_status(p);
  if (!m.ok) throw std::runtime_error("perturbed structure is not Maurer-Cartan: " + m.defect);
  return structure_of(p);
}

}  // namespace

QuotientComplex governing_complex(const StructureDef& d) {
  const std::string& k = d.kind;
  const RVec& p = d.point;
  if (k == "lie_algebroid") return la_quotient_complex(build_q(d.algebroid), p, d.k);
  if (k == "lie_n_algebroid") return lna_quotient_complex(build_q_n(d.lna), p, FixedPointType{d.k, d.l});
  if (k == "poisson") return poisson_complex(d.pi, p, d.k);
  if (k == "b_poisson") return b_poisson_complex(d.pi, d.hypersurface, p, d.k);
  if (k == "poisson_nijenhuis") return pn_complex(PNData{d.pi, d.N}, p, d.k);
  if (k == "lie_bialgebroid") return bialgebroid_complex(pair_of(d), p, d.k);
  if (k == "courant") return courant_complex(courant_theta(d.courant).theta, p, d.k);
  if (k == "quadratic_lie") return quad_lie_complex(d.quad.g, d.quad.pairing, d.quad.tau);
  throw std::invalid_argument("kind " + k + " has no quotient complex; use dirac_complex");
}

std::optional<Structure> structure_of(const StructureDef& d) {
  const std::string& k = d.kind;
  if (k == "lie_algebroid") return Structure(build_q(d.algebroid));
  if (k == "lie_n_algebroid") return Structure(build_q_n(d.lna));
  if (k == "poisson") return Structure(multivector(d.pi, bialgebroid_table(d.base_dim, d.base_dim)));
  if (k == "b_poisson" || k == "lie_bialgebroid") {
    BialgebroidPair pr = pair_of(d);
    return Structure(pr.Pi + pr.f);
  }
  if (k == "courant") return Structure(courant_theta(d.courant).theta);
  if (k == "quadratic_lie")
    return Structure(courant_theta(quadratic_lie_courant(d.quad.g, d.quad.pairing, d.quad.tau)).theta);
  return std::nullopt;
}

Report run(Command cmd, const StructureDef& def, const RunOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  Report r;
  r.command = cmd;
  r.kind = def.kind;
  r.name = def.name;
  r.base_dim = def.base_dim;
  r.point = def.point;
  r.order = def.kind == "lie_n_algebroid" ? std::vector<int>{def.k, def.l} : std::vector<int>{def.k};
  bool reduced = opts.reduced || def.reduced;
  bool filtration = opts.filtration || def.filtration || cmd == Command::graded;
  try {
    McStatus mc = mc_status(def);
    r.mc_verified = mc.ok;
    r.mc_defect = mc.defect;
    if (!mc.ok) {
      // a structure that fails the Maurer-Cartan equation never reaches a complex
      if (cmd != Command::check) r.error = "structure is not Maurer-Cartan: " + mc.defect;
    } else {
      r.detected_order = detect_order(def);
      if (cmd != Command::check) {
        std::optional<QuotientComplex> qc;
        TwoTermComplex cx;
        if (def.kind == "dirac_split") {
          cx = dirac_complex(pair_of(def), def.point).complex;
        } else {
          qc = governing_complex(def);
          cx = qc->complex;
        }
        auto rep = cohomology(cx);
        r.has_complex = true;
        r.dims = cx.dims();
        r.h0 = rep.h0_dim;
        r.h1 = rep.h1_dim;
        r.h1_representatives = rep.h1_representatives;
        int governing = r.h1;
        std::vector<int> K;
        if (reduced) {
          K = b_k(def, *qc);
          r.reduced_h1 = reduced_h1(cx, K);
          governing = *r.reduced_h1;
        }
        r.verdict = verdict_str(governing == 0 ? Verdict::stable_criterion_met : Verdict::criterion_failed);
        if (filtration) {
          if (def.kind != "lie_algebroid") throw std::invalid_argument("graded pieces are available for kind lie_algebroid only");
          for (const auto& pc : graded_pieces(cx, la_filtration(*qc, def.k))) {
            auto g = cohomology(pc.complex);
            r.graded.push_back({pc.t, pc.complex.dims(), g.h0_dim, g.h1_dim});
          }
        }
        if (cmd == Command::search) {
          std::string path = opts.perturb.empty() ? def.perturb : opts.perturb;
          if (path.empty()) throw std::invalid_argument("search needs a perturbation (--perturb or options.perturb)");
          if (!qc) throw std::invalid_argument("no gauge search for kind " + def.kind);
          auto s = perturbed_structure(def, path, -1);
          if (!s) throw std::invalid_argument("no gauge search for kind " + def.kind);
          SearchReport sr;
          sr.result = find_fixed_point(*s, *qc, opts.search, reduced ? &K : nullptr);
          sr.w1_labels = cx.W1;
          sr.membership_verified = sr.result.status == SearchStatus::verified;
          r.search = sr;
        }
      }
    }
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  if (opts.timing) r.timing_ms = elapsed_ms(t0);
  return r;
}

namespace {

json rvec_json(const RVec& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

json labeled_json(const LabeledVector& v) {
  json o = json::object();
  for (const auto& [l, q] : v.entries) o[l] = to_string(q);
  return o;
}

std::string ints_str(const std::vector<int>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + ")";
}

}  // namespace

json report_json(const Report& r) {
  json j;
  j["command"] = command_str(r.command);
  j["kind"] = r.kind;
  j["name"] = r.name;
  j["base_dim"] = r.base_dim;
  j["point"] = rvec_json(r.point);
  j["order"] = r.order;
  j["mc_verified"] = r.mc_verified;
  j["mc_defect"] = r.mc_defect.empty() ? json(nullptr) : json(r.mc_defect);
  j["detected_order"] = r.detected_order ? json(*r.detected_order) : json(nullptr);
  if (r.has_complex) {
    j["cochain_dims"] = r.dims;
    j["h0_dim"] = r.h0;
    j["h1_dim"] = r.h1;
    json reps = json::array();
    for (const auto& v : r.h1_representatives) reps.push_back(labeled_json(v));
    j["h1_representatives"] = reps;
    if (r.reduced_h1) j["reduced_h1_dim"] = *r.reduced_h1;
    if (!r.graded.empty()) {
      json g = json::array();
      for (const auto& row : r.graded) g.push_back({{"t", row.t}, {"dims", row.dims}, {"h0_dim", row.h0}, {"h1_dim", row.h1}});
      j["graded"] = g;
    }
    j["verdict"] = r.verdict;
  }
  if (r.search) {
    const auto& s = r.search->result;
    json o;
    o["status"] = status_str(s.status);
    o["v"] = s.v;
    o["v_exact"] = s.v_exact.empty() ? json(nullptr) : rvec_json(s.v_exact);
    o["residual"] = s.residual.empty() ? json(nullptr) : labeled_json(labeled(s.residual, r.search->w1_labels));
    o["equation_norm"] = s.equation_norm;
    o["iterations"] = s.iterations;
    o["membership_verified"] = r.search->membership_verified;
    j["search"] = o;
  }
  if (!r.error.empty()) j["error"] = r.error;
  if (r.timing_ms) j["timing_ms"] = *r.timing_ms;
  return j;
}

std::string report_text(const Report& r) {
  std::ostringstream os;
  os << r.name << " [" << r.kind << "] " << command_str(r.command) << "\n";
  os << "  point          ";
  for (size_t i = 0; i < r.point.size(); ++i) os << (i ? ", " : "") << to_string(r.point[i]);
  os << "\n  order          " << ints_str(r.order) << "\n";
  os << "  mc verified    " << (r.mc_verified ? "yes" : "no") << "\n";
  if (!r.mc_defect.empty()) os << "  mc defect      " << r.mc_defect << "\n";
  if (r.detected_order) os << "  detected order " << ints_str(*r.detected_order) << "\n";
  if (r.has_complex) {
    os << "  cochain dims   " << ints_str(r.dims) << "\n";
    os << "  h0             " << r.h0 << "\n";
    os << "  h1             " << r.h1 << "\n";
    for (const auto& v : r.h1_representatives) os << "    class        " << vec_str(v) << "\n";
    if (r.reduced_h1) os << "  reduced h1     " << *r.reduced_h1 << "\n";
    if (!r.graded.empty()) {
      os << "  graded pieces  " << std::left << std::setw(5) << "t" << std::setw(16) << "dims" << std::setw(4) << "h0"
         << "h1\n";
      for (const auto& g : r.graded)
        os << "                 " << std::setw(5) << g.t << std::setw(16) << ints_str(g.dims) << std::setw(4) << g.h0
           << g.h1 << "\n";
      os << std::right;
    }
    os << "  verdict        " << r.verdict << "\n";
  }
  if (r.search) {
    const auto& s = r.search->result;
    os << "  search         " << status_str(s.status) << " after " << s.iterations << " iterations\n";
    os << "    v*           ";
    for (size_t i = 0; i < s.v_exact.size(); ++i) os << (i ? ", " : "") << to_string(s.v_exact[i]);
    os << "\n    |P ev(v)|    " << s.equation_norm << "\n";
    os << "    membership   " << (r.search->membership_verified ? "verified" : "not verified") << "\n";
  }
  if (!r.error.empty()) os << "  error          " << r.error << "\n";
  if (r.timing_ms) os << "  time           " << *r.timing_ms << " ms\n";
  return os.str();
}

}  // namespace bracketlab
