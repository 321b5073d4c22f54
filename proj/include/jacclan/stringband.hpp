#pragma once

#include <string>
#include <vector>

#include "jacclan/rep.hpp"
#include "jacclan/surface.hpp"

namespace jc {

struct Letter {
  enum class Kind { Direct, Inverse, Special };
  Kind kind = Kind::Direct;
  int arrow = 0;
  bool operator==(const Letter& o) const { return kind == o.kind && arrow == o.arrow; }
};

// Letters in written order; the word is read right to left like a path.
// A word without letters is the trivial string at trivial_vertex.
struct Word {
  std::vector<Letter> letters;
  int trivial_vertex = -1;
  size_t length() const { return letters.size(); }
  bool operator==(const Word& o) const { return letters == o.letters && trivial_vertex == o.trivial_vertex; }
};

Word parse_word(const PathAlgebra& A, const std::string& text);
std::string word_str(const PathAlgebra& A, const Word& w);
Word inverse(const Word& w);
// Vertices of the points b_0 .. b_m, b_0 at the right end; empty when letters do not compose.
std::vector<int> word_points(const PathAlgebra& A, const Word& w);

bool is_string(const ClannishPresentation& c, const Word& w, std::string* why = nullptr);
bool is_band(const ClannishPresentation& c, const Word& w, std::string* why = nullptr);
bool is_symmetric_string(const Word& w);
bool is_symmetric_band(const Word& w);

struct WordClass {
  Word word;  // canonical representative
  bool symmetric = false;
};
std::vector<WordClass> enumerate_strings(const ClannishPresentation& c, size_t max_len);
std::vector<WordClass> enumerate_bands(const ClannishPresentation& c, size_t max_period);
// Family parameter n of a block string: (number of special letters - 1) / 2.
size_t family_index(const Word& w);
// Block strings with family parameter at most n.
std::vector<WordClass> enumerate_families(const ClannishPresentation& c, size_t n);
std::string canonical_string_key(const PathAlgebra& A, const Word& w);
std::string canonical_band_key(const PathAlgebra& A, const Word& w);

// Simple module over K[x; sigma]/(x^2 - mu) for a special loop: x acts on K^n by A composed with sigma.
// A is an F-matrix on K^n commuting with the K-action.
struct LoopParam {
  size_t n = 1;
  Matrix A;
};
std::vector<LoopParam> loop_params(const ClannishPresentation& c, int loop);

// Asymmetric strings need no parameter; symmetric strings use the given or the first loop parameter.
Representation string_module(const ClannishPresentation& c, const Word& w);
Representation string_module(const ClannishPresentation& c, const Word& w, const LoopParam& centre);
// Symmetric band with period s_a* u s_b* u^-1 up to rotation and inversion.
Representation band_module(const ClannishPresentation& c, const Word& w, const LoopParam& at_a, const LoopParam& at_b);
// Loops (s_a, s_b) of a symmetric band in the order band_module expects.
std::pair<int, int> band_loops(const ClannishPresentation& c, const Word& w);

}  // namespace jc
