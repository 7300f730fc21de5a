#pragma once

// Structure-definition files: one JSON object per query holding the kind,
// the structure functions as polynomial literals, the point and the order.

#include <stdexcept>
#include <string>

#include "bracketlab/algebroid.hpp"
#include "bracketlab/sympoisson.hpp"
#include "json.hpp"

namespace bracketlab {

struct QuadraticLieData {
  IsotropyAlgebra g;  // g |x g^vee
  QMatrix pairing;
  BottRep tau;        // on g^vee (+) W
};

struct StructureDef {
  std::string kind;
  std::string name;
  int base_dim = 0;
  RVec point;
  int k = 1;
  int l = 0;
  bool filtration = false;
  bool reduced = false;
  std::string perturb;

  LieAlgebroidData algebroid;  // lie_algebroid; A of a bialgebroid; L^vee of a Dirac split
  LieAlgebroidData dual;       // explicit dual side when has_dual
  bool has_dual = false;
  LieNAlgebroidData lna;
  Bivector pi;                 // poisson kinds; triangular dual side otherwise
  int hypersurface = -1;
  Bivector graph;              // dirac_split deformation, optional
  bool has_graph = false;
  std::vector<std::vector<Poly>> N;
  CourantData courant;
  QuadraticLieData quad;

  nlohmann::ordered_json source;
};

// degree_bound < 0 accepts polynomial literals of any degree.
StructureDef parse_structure(const nlohmann::ordered_json& j, int degree_bound = -1);
StructureDef parse_structure_text(const std::string& text, int degree_bound = -1);
StructureDef load_structure(const std::string& path, int degree_bound = -1);

// Bialgebroid pair of a lie_bialgebroid, b_poisson or dirac_split definition.
BialgebroidPair pair_of(const StructureDef& d);

// Structure constants of a basis of matrices under the commutator.
IsotropyAlgebra matrix_algebra(const std::vector<QMatrix>& basis);

}  // namespace bracketlab
