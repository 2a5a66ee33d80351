#pragma once

/**
 * @file symmetry.hpp
 * @brief Coordinate-permutation groups S_I = S_{I1} x ... x S_{IR} acting on
 *        multi-indices: orbits, stabilizers, the canonical 0/1 index set and the
 *        symmetrizer.
 *
 * Every orbit has a unique representative whose entries are sorted
 * non-decreasingly inside each group; all orbit questions are answered from
 * that representative and value multiplicities, never by enumerating the group.
 */

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "symquad/errors.hpp"
#include "symquad/korobov.hpp"

namespace symquad {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt factorial(std::size_t n) {
  BigInt r = 1;
  for (std::size_t i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt pow2(std::size_t e) { return BigInt(1) << e; }

/// Disjoint groups of permutation-invariant coordinates (0-based internally).
class InvariancePattern {
 public:
  using Group = std::vector<std::size_t>;

  InvariancePattern(std::size_t dim, std::vector<Group> groups)
      : dim_(dim), groups_(std::move(groups)), owner_(dim, -1) {
    if (dim == 0) throw InvalidInput("InvariancePattern: dimension must be at least 1");
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      auto& group = groups_[g];
      if (group.empty()) throw InvalidInput("InvariancePattern: empty group");
      std::sort(group.begin(), group.end());
      for (auto m : group) {
        if (m >= dim) {
          throw InvalidInput("InvariancePattern: coordinate " + std::to_string(m + 1) +
                             " outside 1.." + std::to_string(dim));
        }
        if (owner_[m] != -1) {
          throw InvalidInput("InvariancePattern: coordinate " + std::to_string(m + 1) +
                             " listed twice");
        }
        owner_[m] = static_cast<int>(g);
      }
    }
  }

  static InvariancePattern trivial(std::size_t dim) { return {dim, {}}; }

  /// Invariance in the first `size` coordinates.
  static InvariancePattern leading(std::size_t dim, std::size_t size) {
    if (size > dim) throw InvalidInput("InvariancePattern: group larger than dimension");
    if (size == 0) return trivial(dim);
    Group g(size);
    for (std::size_t m = 0; m < size; ++m) g[m] = m;
    return {dim, {g}};
  }

  static InvariancePattern full(std::size_t dim) { return leading(dim, dim); }

  /// Builds from 1-based coordinate lists.
  static InvariancePattern from_one_based(std::size_t dim,
                                          const std::vector<std::vector<long long>>& groups) {
    std::vector<Group> zero_based;
    for (const auto& g : groups) {
      Group z;
      for (auto c : g) {
        if (c < 1) throw InvalidInput("InvariancePattern: coordinates are 1-based");
        z.push_back(static_cast<std::size_t>(c - 1));
      }
      zero_based.push_back(std::move(z));
    }
    return {dim, std::move(zero_based)};
  }

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Group>& groups() const noexcept { return groups_; }
  std::size_t group_count() const noexcept { return groups_.size(); }
  /// Index of the group containing coordinate m, or -1.
  int group_of(std::size_t m) const { return owner_.at(m); }

  std::size_t invariant_count() const noexcept {
    std::size_t n = 0;
    for (const auto& g : groups_) n += g.size();
    return n;
  }

  /// At most one group (the setting of the lower-bound construction).
  bool single_group() const noexcept { return groups_.size() <= 1; }

  std::vector<std::vector<long long>> one_based_groups() const {
    std::vector<std::vector<long long>> out;
    for (const auto& g : groups_) {
      std::vector<long long> o;
      for (auto m : g) o.push_back(static_cast<long long>(m) + 1);
      out.push_back(std::move(o));
    }
    return out;
  }

  friend bool operator==(const InvariancePattern& a, const InvariancePattern& b) {
    return a.dim_ == b.dim_ && a.groups_ == b.groups_;
  }

 private:
  std::size_t dim_;
  std::vector<Group> groups_;
  std::vector<int> owner_;
};

// ---------------------------------------------------------------------------
// Shorthand parsing: "1-3,5" for one group, "1-3;4,7" for several.
// ---------------------------------------------------------------------------

inline std::vector<long long> parse_coordinate_list(std::string_view text) {
  std::vector<long long> out;
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto to_int = [&](std::string_view s) -> long long {
    s = trim(s);
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw InvalidInput("bad coordinate '" + std::string(s) + "'");
    }
    return std::stoll(std::string(s));
  };
  while (!text.empty()) {
    const auto comma = text.find(',');
    auto item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) throw InvalidInput("empty item in coordinate list");
    const auto dash = item.find('-');
    if (dash == std::string_view::npos) {
      out.push_back(to_int(item));
    } else {
      const auto lo = to_int(item.substr(0, dash));
      const auto hi = to_int(item.substr(dash + 1));
      if (lo > hi) throw InvalidInput("decreasing coordinate range '" + std::string(item) + "'");
      for (auto c = lo; c <= hi; ++c) out.push_back(c);
    }
  }
  return out;
}

inline std::vector<std::vector<long long>> parse_group_list(std::string_view text) {
  std::vector<std::vector<long long>> out;
  while (!text.empty()) {
    const auto semi = text.find(';');
    out.push_back(parse_coordinate_list(text.substr(0, semi)));
    text = semi == std::string_view::npos ? std::string_view{} : text.substr(semi + 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Orbits
// ---------------------------------------------------------------------------

/// Order of the group: prod_r (#I_r)!.
inline BigInt group_order(const InvariancePattern& p) {
  BigInt order = 1;
  for (const auto& g : p.groups()) order *= factorial(g.size());
  return order;
}

/// Orbit representative: within each group the entries are sorted non-decreasingly.
inline MultiIndex canonicalize(const MultiIndex& k, const InvariancePattern& p) {
  if (k.dim() != p.dim()) throw DimensionMismatch(p.dim(), k.dim());
  std::vector<MultiIndex::value_type> out(k.begin(), k.end());
  std::vector<MultiIndex::value_type> values;
  for (const auto& g : p.groups()) {
    values.clear();
    for (auto m : g) values.push_back(k[m]);
    std::sort(values.begin(), values.end());
    for (std::size_t i = 0; i < g.size(); ++i) out[g[i]] = values[i];
  }
  return MultiIndex(std::move(out));
}

struct OrbitStats {
  MultiIndex canonical;
  BigInt stabilizer_size;  // number of group elements fixing k
  BigInt orbit_size;
};

inline OrbitStats orbit_stats(const MultiIndex& k, const InvariancePattern& p) {
  MultiIndex canonical = canonicalize(k, p);
  BigInt stabilizer = 1;
  for (const auto& g : p.groups()) {
    std::size_t run = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      run = (i > 0 && canonical[g[i]] == canonical[g[i - 1]]) ? run + 1 : 1;
      stabilizer *= run;  // accumulates run! for each block of equal values
    }
  }
  BigInt orbit = group_order(p) / stabilizer;
  return {std::move(canonical), std::move(stabilizer), std::move(orbit)};
}

/// Visits every distinct element of the orbit of k exactly once.
inline void for_each_orbit_element(const MultiIndex& k, const InvariancePattern& p,
                                   const std::function<void(const MultiIndex&)>& visit) {
  const MultiIndex start = canonicalize(k, p);
  std::vector<MultiIndex::value_type> current(start.begin(), start.end());
  const auto& groups = p.groups();
  std::vector<std::vector<MultiIndex::value_type>> values(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (auto m : groups[g]) values[g].push_back(start[m]);
  }
  // Odometer over the per-group multiset permutations (each starts sorted).
  for (;;) {
    for (std::size_t g = 0; g < groups.size(); ++g) {
      for (std::size_t i = 0; i < groups[g].size(); ++i) current[groups[g][i]] = values[g][i];
    }
    visit(MultiIndex(current));
    std::size_t g = groups.size();
    for (;;) {
      if (g == 0) return;
      --g;
      if (std::next_permutation(values[g].begin(), values[g].end())) break;
      // next_permutation wrapped this group back to sorted order; carry.
    }
  }
}

inline std::vector<MultiIndex> orbit_elements(const MultiIndex& k, const InvariancePattern& p) {
  std::vector<MultiIndex> out;
  for_each_orbit_element(k, p, [&](const MultiIndex& e) { out.push_back(e); });
  return out;
}

// ---------------------------------------------------------------------------
// Canonical 0/1 index set
// ---------------------------------------------------------------------------

/// N* = prod_r (#I_r + 1) * 2^(d - sum_r #I_r).
inline BigInt n_star(const InvariancePattern& p) {
  BigInt n = pow2(p.dim() - p.invariant_count());
  for (const auto& g : p.groups()) n *= g.size() + 1;
  return n;
}

/**
 * Lexicographic stream over the 0/1 vectors that are canonical under a pattern.
 *
 * The successor of a canonical vector sets its rightmost 0 to 1 and refills the
 * suffix minimally: a suffix coordinate becomes 1 exactly when an earlier
 * coordinate of its group is already 1. Each step costs O(d), so prefixes are
 * available even when the whole set is astronomically large.
 */
class NablaStream {
 public:
  explicit NablaStream(const InvariancePattern& p) : pattern_(&p), bits_(p.dim(), 0) {}

  MultiIndex current() const { return MultiIndex(bits_); }
  bool done() const noexcept { return done_; }

  void advance() {
    const std::size_t d = bits_.size();
    std::size_t pos = d;
    while (pos > 0 && bits_[pos - 1] == 1) --pos;
    if (pos == 0) {
      done_ = true;
      return;
    }
    bits_[pos - 1] = 1;
    for (std::size_t m = pos; m < d; ++m) {
      const int g = pattern_->group_of(m);
      bits_[m] = (g >= 0 && group_has_one_before(static_cast<std::size_t>(g), m)) ? 1 : 0;
    }
  }

 private:
  bool group_has_one_before(std::size_t g, std::size_t m) const {
    for (auto c : pattern_->groups()[g]) {
      if (c >= m) return false;
      if (bits_[c] == 1) return true;
    }
    return false;
  }

  const InvariancePattern* pattern_;
  std::vector<MultiIndex::value_type> bits_;
  bool done_ = false;
};

inline constexpr std::size_t kDefaultEnumerationCap = std::size_t{1} << 26;

/// First `count` canonical 0/1 vectors in lexicographic order (fewer if the set is smaller).
inline std::vector<MultiIndex> nabla_prefix(const InvariancePattern& p, std::size_t count) {
  std::vector<MultiIndex> out;
  out.reserve(count);
  for (NablaStream s(p); !s.done() && out.size() < count; s.advance()) out.push_back(s.current());
  return out;
}

/// All canonical 0/1 vectors in lexicographic order.
inline std::vector<MultiIndex> enumerate_nabla(const InvariancePattern& p,
                                               std::size_t cap = kDefaultEnumerationCap) {
  const BigInt total = n_star(p);
  if (total > cap) {
    throw CapExceeded("canonical index set has " + total.str() + " entries, cap is " +
                      std::to_string(cap));
  }
  return nabla_prefix(p, static_cast<std::size_t>(total));
}

// ---------------------------------------------------------------------------
// Symmetrizer
// ---------------------------------------------------------------------------

/// Orbit-averaging projection onto invariant polynomials.
inline FourierPolynomial symmetrize(const FourierPolynomial& f, const InvariancePattern& p) {
  if (f.dim() != p.dim()) throw DimensionMismatch(p.dim(), f.dim());
  std::map<MultiIndex, Complex> orbit_sums;
  for (const auto& [k, c] : f.terms()) orbit_sums[canonicalize(k, p)] += c;
  FourierPolynomial out(f.dim());
  for (const auto& [rep, sum] : orbit_sums) {
    const double size = orbit_stats(rep, p).orbit_size.convert_to<double>();
    const Complex average = sum / size;
    if (average == Complex{}) continue;
    for_each_orbit_element(rep, p, [&](const MultiIndex& e) { out.set(e, average); });
  }
  return out;
}

/**
 * True iff f's coefficients are constant on every orbit within tol. Orbits that
 * are only partly present in the support compare against the implicit zeros.
 */
inline bool is_invariant(const FourierPolynomial& f, const InvariancePattern& p, double tol) {
  if (f.dim() != p.dim()) throw DimensionMismatch(p.dim(), f.dim());
  if (tol < 0.0) throw DomainError("is_invariant: tol must be >= 0");
  std::map<MultiIndex, std::size_t> present;
  for (const auto& [k, c] : f.terms()) {
    MultiIndex rep = canonicalize(k, p);
    if (std::abs(c - f.coefficient(rep)) > tol) return false;
    ++present[rep];
  }
  for (const auto& [rep, count] : present) {
    if (orbit_stats(rep, p).orbit_size > count && std::abs(f.coefficient(rep)) > tol) return false;
  }
  return true;
}

}  // namespace symquad
