#include "bracketlab/structure.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace bracketlab {

using json = nlohmann::ordered_json;

namespace {

const std::set<std::string> kKinds = {"lie_algebroid", "lie_n_algebroid", "poisson",
                                      "b_poisson",     "poisson_nijenhuis", "lie_bialgebroid",
                                      "courant",       "quadratic_lie",   "dirac_split"};

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
  throw ParseError("field '" + field + "': " + msg);
}

const json& member(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(where.empty() ? key : where + "." + key, "missing");
  return j.at(key);
}

int as_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  return j.get<int>();
}

int as_index(const json& j, const std::string& field, int bound) {
  int v = as_int(j, field);
  if (v < 0 || v >= bound) fail(field, "index " + std::to_string(v) + " out of range [0, " + std::to_string(bound) + ")");
  return v;
}

Rational as_rational(const json& j, const std::string& field) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) fail(field, "expected a rational literal");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    fail(field, e.what());
  }
}

struct Ctx {
  int n = 0;
  int degree_bound = -1;

  Poly poly(const json& j, const std::string& field) const {
    Poly p;
    if (j.is_number_integer()) {
      p = Poly::constant(n, Rational(j.get<long>()));
    } else if (j.is_string()) {
      try {
        p = parse_poly(j.get<std::string>(), n);
      } catch (const std::exception& e) {
        fail(field, std::string("malformed polynomial literal: ") + e.what());
      }
    } else {
      fail(field, "expected a polynomial literal");
    }
    if (degree_bound >= 0 && !p.is_zero() && p.degree() > degree_bound)
      fail(field, "degree " + std::to_string(p.degree()) + " exceeds the degree bound " + std::to_string(degree_bound));
    return p;
  }
};

const json& array_of(const json& j, const std::string& field, int size = -1) {
  if (!j.is_array()) fail(field, "expected an array");
  if (size >= 0 && (int)j.size() != size)
    fail(field, "dimension mismatch: expected " + std::to_string(size) + " entries, got " + std::to_string(j.size()));
  return j;
}

std::string at(const std::string& field, size_t i) { return field + "[" + std::to_string(i) + "]"; }

// rows x cols matrix of polynomial literals
std::vector<std::vector<Poly>> poly_matrix(const Ctx& c, const json& j, const std::string& field, int rows, int cols) {
  array_of(j, field, rows);
  std::vector<std::vector<Poly>> out(rows);
  for (int r = 0; r < rows; ++r) {
    array_of(j[r], at(field, r), cols);
    for (int q = 0; q < cols; ++q) out[r].push_back(c.poly(j[r][q], at(at(field, r), q)));
  }
  return out;
}

QMatrix rational_matrix(const json& j, const std::string& field, int rows, int cols) {
  array_of(j, field, rows);
  QMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    array_of(j[r], at(field, r), cols);
    for (int q = 0; q < cols; ++q) m(r, q) = as_rational(j[r][q], at(at(field, r), q));
  }
  return m;
}

// Sparse entries [i0, ..., i_{m-1}, literal]; each index slot has its own bound.
template <class F>
void sparse(const Ctx& c, const json& j, const std::string& field, const std::vector<int>& bounds, F&& put) {
  array_of(j, field);
  for (size_t e = 0; e < j.size(); ++e) {
    std::string fe = at(field, e);
    array_of(j[e], fe, (int)bounds.size() + 1);
    std::vector<int> idx;
    for (size_t s = 0; s < bounds.size(); ++s) idx.push_back(as_index(j[e][s], at(fe, s), bounds[s]));
    put(idx, c.poly(j[e][bounds.size()], at(fe, bounds.size())), fe);
  }
}

void bracket_entries(const Ctx& c, const json& j, const std::string& field, int rank,
                     const std::function<void(int, int, int, const Poly&)>& set) {
  sparse(c, j, field, {rank, rank, rank}, [&](const std::vector<int>& i, const Poly& v, const std::string& fe) {
    if (i[0] == i[1]) fail(fe, "bracket entry needs a != b");
    set(i[0], i[1], i[2], v);
  });
}

Bivector bivector(const Ctx& c, const json& j, const std::string& field, int dim) {
  Bivector pi(dim, std::vector<Poly>(dim, Poly(c.n)));
  sparse(c, j, field, {dim, dim}, [&](const std::vector<int>& i, const Poly& v, const std::string& fe) {
    if (i[0] == i[1]) fail(fe, "bivector entry needs i != j");
    pi[i[0]][i[1]] += v;
    pi[i[1]][i[0]] -= v;
  });
  return pi;
}

LieAlgebroidData algebroid(const Ctx& c, const json& j, const std::string& where) {
  std::string pre = where.empty() ? "" : where + ".";
  int rank = as_int(member(j, "rank", where), pre + "rank");
  if (rank < 1) fail(pre + "rank", "must be positive");
  LieAlgebroidData d = LieAlgebroidData::zero(c.n, rank);
  d.anchor = poly_matrix(c, member(j, "anchor", where), pre + "anchor", rank, c.n);
  if (j.contains("bracket"))
    bracket_entries(c, j["bracket"], pre + "bracket", rank,
                    [&](int a, int b, int k, const Poly& v) { d.set_bracket(a, b, k, d.c[k][a][b] + v); });
  return d;
}

// g |x g^vee acting on g^vee (+) W: e_i by coadjoint (+) rho_W, e^i trivially.
BottRep double_action(const IsotropyAlgebra& g, const std::vector<QMatrix>& w) {
  int r = g.dim, dw = w.empty() ? 0 : w[0].rows(), dv = r + dw;
  BottRep tau;
  tau.dim = dv;
  for (int a = 0; a < 2 * r; ++a) {
    QMatrix m(dv, dv);
    if (a < r) {
      for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k) m(j, k) = -g.mu[k][a][j];
      for (int i = 0; i < dw; ++i)
        for (int j = 0; j < dw; ++j) m(r + i, r + j) = w[a](i, j);
    }
    tau.tau.push_back(m);
  }
  return tau;
}

std::vector<QMatrix> matrix_list(const json& j, const std::string& field) {
  array_of(j, field);
  std::vector<QMatrix> out;
  int m = -1;
  for (size_t a = 0; a < j.size(); ++a) {
    const json& mj = array_of(j[a], at(field, a));
    if (m < 0) m = (int)mj.size();
    out.push_back(rational_matrix(mj, at(field, a), m, m));
  }
  return out;
}

}  // namespace

IsotropyAlgebra matrix_algebra(const std::vector<QMatrix>& basis) {
  if (basis.empty()) throw std::invalid_argument("empty matrix basis");
  int r = (int)basis.size(), m = basis[0].rows();
  IsotropyAlgebra g;
  g.dim = r;
  g.mu.assign(r, std::vector<std::vector<Rational>>(r, std::vector<Rational>(r, 0)));
  QMatrix flat(m * m, r);
  for (int a = 0; a < r; ++a)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) flat(i * m + j, a) = basis[a](i, j);
  if (rank(flat) != r) throw std::invalid_argument("matrix basis is linearly dependent");
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      QMatrix br = basis[a] * basis[b];
      QMatrix ba = basis[b] * basis[a];
      RVec rhs(m * m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) rhs[i * m + j] = br(i, j) - ba(i, j);
      auto sol = solve(flat, rhs);
      if (!sol) throw std::invalid_argument("matrix span is not closed under the commutator");
      for (int k = 0; k < r; ++k) g.mu[k][a][b] = (*sol)[k];
    }
  return g;
}

BialgebroidPair pair_of(const StructureDef& d) {
  if (!d.has_dual) return triangular_pair(d.algebroid, d.pi);
  BialgebroidPair p;
  p.table = bialgebroid_table(d.base_dim, d.algebroid.rank);
  p.Pi = lift_algebroid(d.algebroid, p.table);
  p.f = lift_dual_algebroid(d.dual, p.table);
  return p;
}

StructureDef parse_structure(const json& j, int degree_bound) {
  if (!j.is_object()) throw ParseError("structure definition must be a JSON object");
  StructureDef d;
  d.source = j;
  const json& kind = member(j, "kind", "");
  if (!kind.is_string()) fail("kind", "expected a string");
  d.kind = kind.get<std::string>();
  if (!kKinds.count(d.kind)) fail("kind", "unknown kind '" + d.kind + "'");
  if (j.contains("name")) d.name = j["name"].get<std::string>();
  d.base_dim = as_int(member(j, "base_dim", ""), "base_dim");
  if (d.base_dim < 1) fail("base_dim", "must be positive");
  Ctx c{d.base_dim, degree_bound};
  int n = d.base_dim;

  array_of(member(j, "point", ""), "point", n);
  for (int i = 0; i < n; ++i) d.point.push_back(as_rational(j["point"][i], at("point", i)));

  if (j.contains("order")) {
    const json& o = j["order"];
    if (o.is_array()) {
      array_of(o, "order", 2);
      d.k = as_int(o[0], "order[0]");
      d.l = as_int(o[1], "order[1]");
    } else {
      d.k = as_int(o, "order");
    }
  } else if (d.kind == "lie_n_algebroid") {
    fail("order", "missing; a Lie 2-algebroid needs [k, l]");
  }
  if (d.kind == "lie_n_algebroid" && !j["order"].is_array()) fail("order", "expected [k, l]");
  if (j.contains("options")) {
    const json& op = j["options"];
    if (op.contains("filtration")) d.filtration = op["filtration"].get<bool>();
    if (op.contains("reduced")) d.reduced = op["reduced"].get<bool>();
    if (op.contains("perturb")) d.perturb = op["perturb"].get<std::string>();
  }

  auto bad = [](const std::string& field, const std::exception& e) { fail(field, e.what()); };

  if (d.kind == "lie_algebroid") {
    d.algebroid = algebroid(c, j, "");
  } else if (d.kind == "lie_n_algebroid") {
    const json& rk = array_of(member(j, "ranks", ""), "ranks", 2);
    int r1 = as_int(rk[0], "ranks[0]"), r2 = as_int(rk[1], "ranks[1]");
    if (r1 < 1 || r2 < 0) fail("ranks", "need r1 >= 1 and r2 >= 0");
    d.lna = LieNAlgebroidData::zero(n, r1, r2);
    d.lna.anchor = poly_matrix(c, member(j, "anchor", ""), "anchor", r1, n);
    if (j.contains("bracket"))
      bracket_entries(c, j["bracket"], "bracket", r1,
                      [&](int a, int b, int k, const Poly& v) { d.lna.set_bracket(a, b, k, d.lna.c[k][a][b] + v); });
    if (j.contains("l1"))
      sparse(c, j["l1"], "l1", {r2, r1}, [&](const std::vector<int>& i, const Poly& v, const std::string&) {
        d.lna.l1[i[0]][i[1]] += v;
      });
    if (j.contains("l2"))
      sparse(c, j["l2"], "l2", {r2, r1, r2}, [&](const std::vector<int>& i, const Poly& v, const std::string&) {
        d.lna.l2[i[0]][i[1]][i[2]] += v;
      });
    if (j.contains("l3"))
      sparse(c, j["l3"], "l3", {r2, r1, r1, r1}, [&](const std::vector<int>& i, const Poly& v, const std::string& fe) {
        if (i[1] == i[2] || i[1] == i[3] || i[2] == i[3]) fail(fe, "l3 entry needs distinct slots");
        d.lna.set_l3(i[0], i[1], i[2], i[3], v);
      });
  } else if (d.kind == "poisson") {
    d.pi = bivector(c, member(j, "pi", ""), "pi", n);
  } else if (d.kind == "b_poisson") {
    d.hypersurface = as_index(member(j, "hypersurface", ""), "hypersurface", n);
    d.pi = bivector(c, member(j, "pi", ""), "pi", n);
    d.algebroid = b_tangent_algebroid(n, d.hypersurface);
  } else if (d.kind == "poisson_nijenhuis") {
    d.pi = bivector(c, member(j, "pi", ""), "pi", n);
    d.N = poly_matrix(c, member(j, "N", ""), "N", n, n);
  } else if (d.kind == "lie_bialgebroid" || d.kind == "dirac_split") {
    // dirac_split stores the pair with A = L^vee
    bool dirac = d.kind == "dirac_split";
    std::string a_key = dirac ? "L_dual" : "A", dual_key = dirac ? "L" : "A_dual";
    d.algebroid = algebroid(c, member(j, a_key, ""), a_key);
    int r = d.algebroid.rank;
    if (j.contains(dual_key)) {
      d.dual = algebroid(c, j[dual_key], dual_key);
      if (d.dual.rank != r) fail(dual_key + ".rank", "must equal " + a_key + ".rank");
      d.has_dual = true;
    } else if (j.contains("pi")) {
      d.pi = bivector(c, j["pi"], "pi", r);
    } else {
      fail(dual_key, "missing (give it explicitly or through 'pi')");
    }
    if (dirac && j.contains("graph")) {
      d.graph = bivector(c, j["graph"], "graph", r);
      d.has_graph = true;
    }
  } else if (d.kind == "courant") {
    const json& gj = member(j, "pairing", "");
    int r = (int)array_of(gj, "pairing").size();
    if (r < 1) fail("pairing", "empty");
    QMatrix g = rational_matrix(gj, "pairing", r, r);
    try {
      d.courant = CourantData::zero(n, g);
    } catch (const std::exception& e) {
      bad("pairing", e);
    }
    d.courant.anchor = poly_matrix(c, member(j, "anchor", ""), "anchor", r, n);
    if (j.contains("T"))
      sparse(c, j["T"], "T", {r, r, r}, [&](const std::vector<int>& i, const Poly& v, const std::string& fe) {
        if (i[0] == i[1] || i[0] == i[2] || i[1] == i[2]) fail(fe, "T entry needs distinct slots");
        d.courant.set_T(i[0], i[1], i[2], v);
      });
  } else if (d.kind == "quadratic_lie") {
    auto basis = matrix_list(member(j, "algebra", ""), "algebra");
    if (basis.empty()) fail("algebra", "empty basis");
    std::vector<QMatrix> rep;
    if (j.contains("representation")) rep = matrix_list(j["representation"], "representation");
    if (!rep.empty() && rep.size() != basis.size())
      fail("representation", "needs one matrix per algebra basis element");
    IsotropyAlgebra g;
    try {
      g = matrix_algebra(basis);
    } catch (const std::exception& e) {
      bad("algebra", e);
    }
    auto [dbl, pairing] = double_with_dual(g);
    d.quad.g = dbl;
    d.quad.pairing = pairing;
    d.quad.tau = double_action(g, rep);
    if (d.quad.tau.dim != n)
      fail("base_dim", "must equal dim g + dim W = " + std::to_string(d.quad.tau.dim));
    for (const auto& q : d.point)
      if (q != 0) fail("point", "a quadratic Lie algebra is analysed at the origin");
    if (d.k != 1) fail("order", "a quadratic Lie algebra is analysed at order 1");
  }
  return d;
}

StructureDef parse_structure_text(const std::string& text, int degree_bound) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return parse_structure(j, degree_bound);
}

StructureDef load_structure(const std::string& path, int degree_bound) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  StructureDef d = parse_structure_text(ss.str(), degree_bound);
  if (d.name.empty()) d.name = std::filesystem::path(path).stem().string();
  if (!d.perturb.empty() && std::filesystem::path(d.perturb).is_relative())
    d.perturb = (std::filesystem::path(path).parent_path() / d.perturb).string();
  return d;
}

}  // namespace bracketlab
