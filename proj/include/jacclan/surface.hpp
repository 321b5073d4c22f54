#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jacclan/matrix.hpp"
#include "jacclan/pathalg.hpp"
#include "jacclan/quotient.hpp"

namespace jc {

enum class SurfaceMode { Arbitrary, Constant };

struct Arc {
  std::string id;
  bool pending = false;
  int weight = 0;  // orbifold weight 1 or 4 when pending
};

struct Triangle {
  std::array<std::string, 3> edges;  // counterclockwise
  bool interior = false;             // derived: all three edges are arcs
};

struct Triangulation {
  std::vector<Arc> arcs;
  std::vector<std::string> boundary;
  std::vector<Triangle> triangles;
  std::map<std::string, int> cocycle;  // keyed by arrow name of the unweighted quiver
  SurfaceMode mode = SurfaceMode::Arbitrary;

  int arc_index(const std::string& id) const;  // -1 for boundary segments and unknown ids
  bool is_boundary(const std::string& id) const;
  // Throws on malformed incidence data and fills the interior flags.
  void validate();
  // Replaces the pending weights, in the order the pending arcs are listed.
  void set_weights(const std::vector<int>& w);
};

// Parses and validates a triangulation document given as JSON text.
Triangulation parse_triangulation(const std::string& json_text);
Triangulation load_triangulation(const std::string& path);
std::string triangulation_json(const Triangulation& t);

// Arrows of the unweighted quiver; vertices are the arcs in listing order.
struct BarArrow {
  std::string name;
  int tail = 0, head = 0;
  int triangle = 0;
};
std::vector<BarArrow> quiver_bar(const Triangulation& t);

// Cellular chain complex over F_2: interior triangles, arrows, arcs.
struct ChainComplex {
  Matrix d1;  // arcs x arrows
  Matrix d2;  // arrows x interior triangles
  std::vector<int> interior;  // triangle indices of the 2-cells
};
ChainComplex chain_complex(const Triangulation& t);
std::vector<int> cocycle_vector(const Triangulation& t, const std::map<std::string, int>& xi);
bool is_cocycle(const Triangulation& t, const std::vector<int>& xi);
Matrix cocycle_basis(const Triangulation& t);  // columns span Z^1
struct H1Info {
  size_t dim_c1 = 0, dim_z1 = 0, dim_b1 = 0, dim_h1 = 0;
  bool boundary_squared_zero = false;
};
H1Info h1(const Triangulation& t);
bool cohomologous(const Triangulation& t, const std::vector<int>& xi1, const std::vector<int>& xi2);

enum class VertexKind { NonPending, Pending1, Pending4 };

// Provenance of each arrow of a weighted or clannish quiver.
struct ArrowOrigin {
  int bar = -1;         // arrow of the unweighted quiver, -1 for special loops
  bool extra = false;   // second arrow of a double arrow
  int triangle = -1;
  int partner = -1;     // the other arrow of a double arrow
};

struct Species {
  PathAlgebra A;
  Element W;
  std::vector<ArrowOrigin> origin;
  std::vector<VertexKind> kinds;
  std::vector<int> xi;  // per unweighted arrow
  SurfaceMode mode = SurfaceMode::Arbitrary;

  std::vector<Element> derivatives() const;
  QuotientAlgebra jacobian(int lmax = -1) const;
};

struct ClannishPresentation {
  PathAlgebra A;
  ClannishRelations rel;
  std::vector<ArrowOrigin> origin;
  std::vector<VertexKind> kinds;
  std::vector<int> loop_at;  // special loop index per vertex, -1 if none
  std::vector<int> xi;
  SurfaceMode mode = SurfaceMode::Arbitrary;

  QuotientAlgebra algebra(int lmax = -1) const;
  // Element s^2 - mu e for the loop at vertex k.
  Element quadratic(int k) const;
  std::vector<Element> zero_paths() const;
};

Species build_species(const Triangulation& t, DatumPtr datum);
ClannishPresentation build_clannish(const Triangulation& t, DatumPtr datum, bool enforce_cocycle = true);

// Semilinear quadratic x^2 - mu over the subfield of the given degree, with x lambda = sigma(lambda) x.
bool normality_check(const GaloisDatum& d, int level, int sigma_exp, const Scalar& mu_coef, int mu_exp);
bool semisimple_type(const GaloisDatum& d, int level, int sigma_exp, const Scalar& mu_coef, int mu_exp);
// Mechanical check of the clannish conditions; returns the failures.
std::vector<std::string> check_clannish_conditions(const ClannishPresentation& c);

// Puzzle-piece decomposition: block type per triangle and the arc sitting at each block vertex.
struct BlockPiece {
  int block = 0;
  int triangle = 0;
  std::array<int, 3> vertex_arc{};  // arc index at block vertices 1, 2, 3; -1 when deleted
};
struct Decomposition {
  std::vector<BlockPiece> pieces;
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> matching;  // (piece, vertex) pairs glued
};
Decomposition block_decompose(const Triangulation& t);

// Species obtained by gluing block species along the decomposition.
Species glue_blocks(const Triangulation& t, const Decomposition& dec, DatumPtr datum);
// Same underlying data up to arrow names.
bool same_species(const Species& x, const Species& y, std::string* why = nullptr);

// Building blocks 1..10 with the cocycle triple (xi_alpha, xi_beta, xi_gamma).
Triangulation block_triangulation(int k, std::array<int, 3> xi = {0, 0, 0});
struct Block {
  int k = 0;
  Triangulation tau;
  Species species;
  ClannishPresentation clannish;
};
// Arbitrary-mode blocks use the degree-4 datum; blocks 8-10 use the degree-2 datum.
Block make_block(int k, DatumPtr deg4, DatumPtr deg2, std::array<int, 3> xi = {0, 0, 0});
// Cocycle triples used by the block tables for a free parameter x in {0, 1}.
std::vector<std::array<int, 3>> block_cocycles(int k);

std::string species_dot(const Species& s);
std::string clannish_dot(const ClannishPresentation& c);

}  // namespace jc
