#include "exm/base_space.hpp"

#include <algorithm>
#include <sstream>

namespace exm::base {

CantorSet make_cantor_set(std::vector<std::uint32_t> elements) {
  for (auto e : elements)
    if (e == 0) throw validation_error("cantor sets hold positive integers; got 0");
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return elements;
}

std::string BaseSpace::describe() const {
  switch (kind) {
    case Kind::UnitIntervalQ: return "unit_interval";
    case Kind::CantorFinite: return "cantor(max_element=" + std::to_string(max_element) + ")";
    case Kind::FiniteDiscrete: return "discrete(n=" + std::to_string(table.size()) + ")";
  }
  return "?";
}

BaseSpace unit_interval(unsigned grid_log2) {
  BaseSpace s;
  s.kind = Kind::UnitIntervalQ;
  s.grid_log2 = grid_log2;
  return s;
}

BaseSpace cantor_finite(std::uint32_t max_element) {
  if (max_element == 0) throw validation_error("cantor universe needs max_element >= 1");
  BaseSpace s;
  s.kind = Kind::CantorFinite;
  s.max_element = max_element;
  return s;
}

void validate_table(const std::vector<std::vector<Rat>>& table) {
  const std::size_t n = table.size();
  if (n == 0) throw validation_error("distance table is empty");
  for (std::size_t i = 0; i < n; ++i)
    if (table[i].size() != n)
      throw validation_error("distance table row " + std::to_string(i) + " is not square");
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i][i] != 0)
      throw validation_error("nonzero diagonal at (" + std::to_string(i) + "," + std::to_string(i) + ")");
    for (std::size_t j = 0; j < n; ++j) {
      if (table[i][j] < 0)
        throw validation_error("negative entry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      if (i != j && table[i][j] == 0)
        throw validation_error("zero off-diagonal entry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      if (table[i][j] != table[j][i])
        throw validation_error("asymmetric entries at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (table[i][k] > table[i][j] + table[j][k])
          throw validation_error("triangle inequality fails on (" + std::to_string(i) + "," +
                                 std::to_string(j) + "," + std::to_string(k) + ")");
}

BaseSpace finite_discrete(std::vector<std::vector<Rat>> table) {
  validate_table(table);
  return finite_discrete_unchecked(std::move(table));
}

BaseSpace finite_discrete_unchecked(std::vector<std::vector<Rat>> table) {
  BaseSpace s;
  s.kind = Kind::FiniteDiscrete;
  s.table = std::move(table);
  return s;
}

void require_point(const BaseSpace& space, const BasePoint& p) {
  switch (space.kind) {
    case Kind::UnitIntervalQ: {
      const auto* r = std::get_if<Rat>(&p);
      if (!r) throw validation_error("expected a rational point for unit_interval");
      if (*r < 0 || *r > 1) throw validation_error("point " + rat_to_string(*r) + " outside [0,1]");
      return;
    }
    case Kind::CantorFinite: {
      const auto* s = std::get_if<CantorSet>(&p);
      if (!s) throw validation_error("expected a finite integer set for cantor space");
      for (std::size_t i = 0; i < s->size(); ++i) {
        if ((*s)[i] == 0) throw validation_error("cantor sets hold positive integers");
        if (i > 0 && (*s)[i - 1] >= (*s)[i]) throw validation_error("cantor set not in canonical order");
      }
      return;
    }
    case Kind::FiniteDiscrete: {
      const auto* i = std::get_if<std::uint32_t>(&p);
      if (!i) throw validation_error("expected an index point for discrete space");
      if (*i >= space.point_count())
        throw validation_error("index " + std::to_string(*i) + " outside carrier of size " +
                               std::to_string(space.point_count()));
      return;
    }
  }
}

Rat cantor_distance(const CantorSet& a, const CantorSet& b) {
  // Least element of the symmetric difference via a sorted merge.
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++i;
      ++j;
    } else {
      return Rat(1, std::min(a[i], b[j]));
    }
  }
  if (i < a.size()) return Rat(1, a[i]);
  if (j < b.size()) return Rat(1, b[j]);
  return Rat(0);
}

Rat base_distance(const BaseSpace& space, const BasePoint& p, const BasePoint& q) {
  require_point(space, p);
  require_point(space, q);
  switch (space.kind) {
    case Kind::UnitIntervalQ:
      return rat_abs(std::get<Rat>(p) - std::get<Rat>(q));
    case Kind::CantorFinite:
      return cantor_distance(std::get<CantorSet>(p), std::get<CantorSet>(q));
    case Kind::FiniteDiscrete:
      return space.table[std::get<std::uint32_t>(p)][std::get<std::uint32_t>(q)];
  }
  throw std::logic_error("unreachable");
}

Rat gauge(const BaseSpace& space, const BasePoint& p, const BasePoint& q) {
  Rat d = base_distance(space, p, q);
  return d > 1 ? Rat(1) : d;
}

BaseSpace truncate(const BaseSpace& space) {
  if (space.kind != Kind::FiniteDiscrete) return space;
  BaseSpace s = space;
  for (auto& row : s.table)
    for (auto& d : row)
      if (d > 1) d = 1;
  return s;
}

BasePoint sample_point(const BaseSpace& space, Rng& rng) {
  switch (space.kind) {
    case Kind::UnitIntervalQ:
      return rng.unit_rational(space.grid_log2);
    case Kind::CantorFinite: {
      CantorSet s;
      for (std::uint32_t e = 1; e <= space.max_element; ++e)
        if (rng.coin()) s.push_back(e);
      return s;
    }
    case Kind::FiniteDiscrete:
      return static_cast<std::uint32_t>(rng.below(space.point_count()));
  }
  throw std::logic_error("unreachable");
}

std::string format_point(const BasePoint& p) {
  if (const auto* r = std::get_if<Rat>(&p)) return rat_to_string(*r);
  if (const auto* s = std::get_if<CantorSet>(&p)) {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < s->size(); ++i) {
      if (i) out << ',';
      out << (*s)[i];
    }
    out << '}';
    return out.str();
  }
  return std::to_string(std::get<std::uint32_t>(p));
}

BasePoint parse_point(const BaseSpace& space, const std::string& text) {
  switch (space.kind) {
    case Kind::UnitIntervalQ: {
      auto r = rat_parse(text);
      if (!r) throw parse_error("bad rational point: " + text);
      return *r;
    }
    case Kind::CantorFinite: {
      if (text.size() < 2 || text.front() != '{' || text.back() != '}')
        throw parse_error("bad set literal (expected {a,b,...}): " + text);
      std::vector<std::uint32_t> elems;
      std::string body = text.substr(1, text.size() - 2);
      std::istringstream in(body);
      std::string tok;
      while (std::getline(in, tok, ',')) {
        if (tok.empty()) throw parse_error("empty element in set literal: " + text);
        try {
          unsigned long v = std::stoul(tok);
          elems.push_back(static_cast<std::uint32_t>(v));
        } catch (const std::exception&) {
          throw parse_error("bad element '" + tok + "' in set literal");
        }
      }
      return make_cantor_set(std::move(elems));
    }
    case Kind::FiniteDiscrete: {
      try {
        return static_cast<std::uint32_t>(std::stoul(text));
      } catch (const std::exception&) {
        throw parse_error("bad index point: " + text);
      }
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace exm::base
