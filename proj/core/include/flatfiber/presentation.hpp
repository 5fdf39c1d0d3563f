#pragma once

#include <string>
#include <vector>

#include "flatfiber/affine.hpp"

namespace flatfiber {

struct Letter {
  std::size_t generator;
  bool inverse = false;
  friend bool operator==(const Letter&, const Letter&) = default;
};
using Word = std::vector<Letter>;

// Generators g0, g1, ... realized as affine maps, plus relator words.
struct Presentation {
  std::vector<std::string> names;
  std::vector<AffineMap> generators;
  std::vector<Word> relators;

  std::size_t size() const { return generators.size(); }
  std::string letter_name(const Letter& l) const;
  std::vector<std::string> spell(const Word& w) const;
  // Parses "g3" or "-g3" against the generator names.
  Letter parse_letter(const std::string& token) const;
};

Word inverse_word(const Word& w);
Word concat(const Word& a, const Word& b);
AffineMap evaluate(const Word& w, const std::vector<AffineMap>& images);

}  // namespace flatfiber
