#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jacclan/galois.hpp"
#include "jacclan/morita.hpp"
#include "jacclan/stringband.hpp"
#include "jacclan/surface.hpp"

namespace py = pybind11;
using namespace jc;

namespace {

struct Pair {
  Species species;
  ClannishPresentation clannish;
};

Pair block_pair(int k, const std::string& datum4, const std::string& datum2, std::array<int, 3> xi) {
  Block b = make_block(k, parse_datum(datum4), parse_datum(datum2), xi);
  return Pair{std::move(b.species), std::move(b.clannish)};
}

Pair surface_pair(const std::string& path, const std::vector<int>& weights, const std::string& mode, const std::string& datum) {
  Triangulation t = load_triangulation(path);
  if (!mode.empty()) t.mode = mode == "constant4" ? SurfaceMode::Constant : SurfaceMode::Arbitrary;
  if (!weights.empty()) t.set_weights(weights);
  std::string d = datum.empty() ? (t.mode == SurfaceMode::Arbitrary ? "F5:4:2:2" : "F5:2:2") : datum;
  DatumPtr D = parse_datum(d);
  return Pair{build_species(t, D), build_clannish(t, D)};
}

std::vector<std::string> derivative_strings(const Pair& p) {
  std::vector<std::string> out;
  for (const auto& d : p.species.derivatives()) out.push_back(p.species.A.str(d));
  return out;
}

std::vector<std::pair<std::string, bool>> string_families(const Pair& p, size_t n) {
  std::vector<std::pair<std::string, bool>> out;
  for (const auto& wc : enumerate_families(p.clannish, n)) out.emplace_back(word_str(p.clannish.A, wc.word), wc.symmetric);
  return out;
}

std::string verify(const Pair& p, size_t random, size_t max_dim, uint64_t seed) {
  SamplePlan plan;
  plan.random = random;
  plan.max_dim = max_dim;
  plan.seed = seed;
  return verify_equivalence(p.species, p.clannish, plan).json();
}

}  // namespace

PYBIND11_MODULE(_jacclan, m) {
  m.doc() = "Jacobian algebras of species with potential and semilinear clannish algebras";
  py::register_exception<Error>(m, "JacclanError");

  py::class_<Pair>(m, "Presentation")
      .def_property_readonly("jacobian_dim", [](const Pair& p) { return p.species.jacobian().dim(); })
      .def_property_readonly("clannish_dim", [](const Pair& p) { return p.clannish.algebra().dim(); })
      .def_property_readonly("vertices", [](const Pair& p) {
        std::vector<std::string> out;
        for (const auto& v : p.species.A.quiver().vertices) out.push_back(v.name);
        return out;
      })
      .def_property_readonly("potential", [](const Pair& p) { return p.species.A.str(p.species.W); })
      .def("derivatives", &derivative_strings)
      .def("clannish_conditions", [](const Pair& p) { return check_clannish_conditions(p.clannish); })
      .def("string_families", &string_families, py::arg("n") = 1)
      .def("verify", &verify, py::arg("random") = 4, py::arg("max_dim") = 4, py::arg("seed") = 1);

  m.def("datum_degree", [](const std::string& text) { return parse_datum(text)->degree; }, py::arg("text"));
  m.def("block", &block_pair, py::arg("k"), py::arg("datum4") = "F5:4:2:2", py::arg("datum2") = "F5:2:2",
        py::arg("xi") = std::array<int, 3>{0, 0, 0});
  m.def("surface", &surface_pair, py::arg("path"), py::arg("weights") = std::vector<int>{}, py::arg("mode") = "",
        py::arg("datum") = "");
}
