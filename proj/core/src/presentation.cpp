#include "flatfiber/presentation.hpp"

#include "flatfiber/space_group.hpp"

namespace flatfiber {

std::string Presentation::letter_name(const Letter& l) const {
  return (l.inverse ? "-" : "") + names.at(l.generator);
}

std::vector<std::string> Presentation::spell(const Word& w) const {
  std::vector<std::string> out;
  for (const auto& l : w) out.push_back(letter_name(l));
  return out;
}

Letter Presentation::parse_letter(const std::string& token) const {
  bool inv = !token.empty() && token[0] == '-';
  std::string name = inv ? token.substr(1) : token;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return {i, inv};
  throw Error("unknown generator '" + name + "' in relator");
}

Word inverse_word(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->generator, !it->inverse});
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

AffineMap evaluate(const Word& w, const std::vector<AffineMap>& images) {
  if (images.empty()) throw Error("evaluating a word without generator images");
  AffineMap result = AffineMap::identity(images[0].dim());
  for (const auto& l : w) {
    const AffineMap& g = images.at(l.generator);
    result = compose(result, l.inverse ? invert(g) : g);
  }
  return result;
}

namespace {

Word translation_word(const ZVec& z) {
  Word w;
  for (std::size_t j = 0; j < z.size(); ++j) {
    bool inv = z[j] < 0;
    Integer count = abs_of(z[j]);
    for (Integer c = 0; c < count; ++c) w.push_back({j, inv});
  }
  return w;
}

ZVec negated(const ZVec& z) {
  ZVec out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = -z[i];
  return out;
}

}  // namespace

Presentation standard_presentation(const SpaceGroup& g) {
  Presentation p;
  std::size_t n = g.dim();
  for (const auto& t : g.lattice_translations()) p.generators.push_back(t);
  for (std::size_t i = 1; i < g.cosets().size(); ++i) p.generators.push_back(g.cosets()[i]);
  for (std::size_t i = 0; i < p.generators.size(); ++i) p.names.push_back("g" + std::to_string(i));
  auto coset_letter = [n](std::size_t i) { return Letter{n + i - 1, false}; };

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      p.relators.push_back({{i, false}, {j, false}, {i, true}, {j, true}});
  const auto basis = g.lattice().basis_vectors();
  for (std::size_t i = 1; i < g.cosets().size(); ++i) {
    const auto& c = g.cosets()[i];
    for (std::size_t j = 0; j < n; ++j) {
      ZVec w = *g.lattice().coordinates(c.linear * basis[j]);
      Word r{coset_letter(i), {j, false}, {coset_letter(i).generator, true}};
      p.relators.push_back(concat(r, translation_word(negated(w))));
    }
  }
  for (std::size_t i = 1; i < g.cosets().size(); ++i)
    for (std::size_t j = 1; j < g.cosets().size(); ++j) {
      const auto& a = g.cosets()[i];
      const auto& b = g.cosets()[j];
      std::size_t k = *g.coset_of(a.linear * b.linear);
      ZVec c = *g.lattice().coordinates(a.shift + a.linear * b.shift - g.cosets()[k].shift);
      Word r{coset_letter(i), coset_letter(j)};
      if (k != 0) r.push_back({coset_letter(k).generator, true});
      p.relators.push_back(concat(r, translation_word(negated(c))));
    }
  return p;
}

Word normal_form_word(const SpaceGroup& g, const AffineMap& element) {
  auto [i, z] = g.decompose_element(element);
  Word w = translation_word(z);
  if (i != 0) w.push_back({g.dim() + i - 1, false});
  return w;
}

}  // namespace flatfiber
