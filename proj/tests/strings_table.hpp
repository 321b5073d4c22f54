#pragma once

// String lists of the clannish building blocks, written out from the published table.

#include <string>
#include <vector>

#include "jacclan/surface.hpp"

namespace strings_table {

using namespace jc;

inline std::string repeat(const std::string& s, size_t n) {
  std::string out;
  for (size_t i = 0; i < n; ++i) out += s + " ";
  return out;
}

inline std::string squash(std::string s) {
  std::string out;
  bool space = false;
  for (char ch : s) {
    if (ch == ' ') {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += ch;
  }
  return out;
}

// Name of the non-special clannish arrow 3 -> 2.
inline std::string beta_name(const ClannishPresentation& c) {
  const auto& Q = c.A.quiver();
  for (const auto& a : Q.arrows)
    if (!a.special && Q.vertices[a.tail].name == "3" && Q.vertices[a.head].name == "2") return a.name;
  return "b";
}

struct Census {
  std::vector<std::string> asym, sym;
};

// Strings of the block tables written out for family parameter at most n.
inline Census table_strings(int k, const ClannishPresentation& c, size_t n) {
  Census out;
  if (k == 1 || k == 8) {
    out.asym = {"1_1", "1_2", "1_3", "a", "b", "g"};
  } else if (k == 2 || k == 3 || k == 9) {
    out.asym = {"1_2", "1_3", "b", "s1* a", "g s1*", "g s1* a"};
    out.sym = {"s1*", "a^-1 s1* a", "g s1* g^-1"};
  } else {
    const std::string B = beta_name(c);
    const std::string P = B + " s3* " + B + "^-1 s2*";   // beta s3* beta^-1 s2*
    const std::string R = "s3* " + B + "^-1 s2* " + B;   // s3* beta^-1 s2* beta
    const std::string T = B + "^-1 s2* " + B + " s3*";   // beta^-1 s2* beta s3*
    out.asym.push_back("1_1");
    for (size_t m = 0; m <= n; ++m) {
      out.asym.push_back(squash(repeat(R, m) + "s3* g"));
      out.asym.push_back(squash("a s2* " + repeat(P, m)));
      out.asym.push_back(squash("s2* " + repeat(P, m) + B + " s3*"));
      out.asym.push_back(squash("s2* " + repeat(P, m) + B + " s3* g"));
      out.asym.push_back(squash("a s2* " + repeat(P, m) + B + " s3*"));
      out.asym.push_back(squash("a s2* " + repeat(P, m) + B + " s3* g"));
      out.sym.push_back(squash("s2* " + repeat(P, m)));
      out.sym.push_back(squash("s3* " + repeat(T, m)));
      out.sym.push_back(squash("a s2* " + repeat(P, m) + "a^-1"));
      out.sym.push_back(squash("g^-1 s3* " + repeat(T, m) + "g"));
    }
  }
  return out;
}

}  // namespace strings_table
