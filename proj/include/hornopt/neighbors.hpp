#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hornopt/error.hpp"
#include "hornopt/rng.hpp"
#include "hornopt/scheme.hpp"

namespace hornopt {

enum class NeighborhoodKind { Swap1, Swap2, Swap3, Shift1, Mirror, ManyShift, MirrorShift };

enum class NeighborhoodGroup { SmallChange, LargeChange };

inline constexpr std::array<NeighborhoodKind, 7> kAllNeighborhoods = {
    NeighborhoodKind::Swap1,  NeighborhoodKind::Swap2,     NeighborhoodKind::Swap3,      NeighborhoodKind::Shift1,
    NeighborhoodKind::Mirror, NeighborhoodKind::ManyShift, NeighborhoodKind::MirrorShift};

inline std::string_view to_token(NeighborhoodKind k) {
  switch (k) {
    case NeighborhoodKind::Swap1: return "1swap";
    case NeighborhoodKind::Swap2: return "2swap";
    case NeighborhoodKind::Swap3: return "3swap";
    case NeighborhoodKind::Shift1: return "1shift";
    case NeighborhoodKind::Mirror: return "mirror";
    case NeighborhoodKind::ManyShift: return "manyshift";
    case NeighborhoodKind::MirrorShift: return "mirrorshift";
  }
  return "?";
}

inline NeighborhoodKind parse_kind(std::string_view token) {
  for (NeighborhoodKind k : kAllNeighborhoods) {
    if (to_token(k) == token) return k;
  }
  throw InvalidArgument("unknown neighborhood '" + std::string(token) +
                        "' (expected 1swap, 2swap, 3swap, 1shift, mirror, manyshift or mirrorshift)");
}

inline NeighborhoodGroup group_of(NeighborhoodKind k) {
  switch (k) {
    case NeighborhoodKind::Swap1:
    case NeighborhoodKind::Swap2:
    case NeighborhoodKind::Swap3:
    case NeighborhoodKind::Shift1: return NeighborhoodGroup::SmallChange;
    default: return NeighborhoodGroup::LargeChange;
  }
}

namespace detail {

// Two distinct uniform positions, ascending.
inline std::pair<std::size_t, std::size_t> distinct_pair(std::size_t n, Rng& rng) {
  const auto i = static_cast<std::size_t>(rng.below(n));
  auto j = static_cast<std::size_t>(rng.below(n - 1));
  if (j >= i) ++j;
  return i < j ? std::pair{i, j} : std::pair{j, i};
}

template <class T>
void swap_step(std::vector<T>& v, Rng& rng) {
  const auto i = static_cast<std::size_t>(rng.below(v.size()));
  auto j = static_cast<std::size_t>(rng.below(v.size() - 1));
  if (j >= i) ++j;
  std::swap(v[i], v[j]);
}

// Moves the element at `from` so that it ends up at index `to`.
template <class T>
void move_element(std::vector<T>& v, std::size_t from, std::size_t to) {
  if (from < to) {
    std::rotate(v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(from) + 1,
                v.begin() + static_cast<std::ptrdiff_t>(to) + 1);
  } else if (to < from) {
    std::rotate(v.begin() + static_cast<std::ptrdiff_t>(to), v.begin() + static_cast<std::ptrdiff_t>(from),
                v.begin() + static_cast<std::ptrdiff_t>(from) + 1);
  }
}

template <class T>
void shift_step(std::vector<T>& v, Rng& rng) {
  const std::size_t n = v.size();
  const auto from = static_cast<std::size_t>(rng.below(n));
  auto to = static_cast<std::size_t>(rng.below(n - 1));
  if (to >= from) ++to;
  move_element(v, from, to);
}

template <class T>
void mirror_step(std::vector<T>& v, Rng& rng) {
  const auto [a, b] = distinct_pair(v.size(), rng);
  std::reverse(v.begin() + static_cast<std::ptrdiff_t>(a), v.begin() + static_cast<std::ptrdiff_t>(b) + 1);
}

// Sublist [a, b] (never the whole list) reinserted at a different offset.
template <class T>
void many_shift_step(std::vector<T>& v, Rng& rng) {
  const std::size_t n = v.size();
  if (n == 2) {
    shift_step(v, rng);
    return;
  }
  std::size_t a = 0;
  std::size_t b = 0;
  do {
    std::tie(a, b) = distinct_pair(n, rng);
  } while (b - a + 1 == n);
  const std::size_t len = b - a + 1;
  const std::size_t slots = n - len + 1;
  auto to = static_cast<std::size_t>(rng.below(slots - 1));
  if (to >= a) ++to;
  std::vector<T> block(v.begin() + static_cast<std::ptrdiff_t>(a), v.begin() + static_cast<std::ptrdiff_t>(b) + 1);
  v.erase(v.begin() + static_cast<std::ptrdiff_t>(a), v.begin() + static_cast<std::ptrdiff_t>(b) + 1);
  v.insert(v.begin() + static_cast<std::ptrdiff_t>(to), block.begin(), block.end());
}

}  // namespace detail

/// Applies one random move of `kind` to `order` in place.
template <class T>
void propose_in_place(std::vector<T>& order, NeighborhoodKind kind, Rng& rng) {
  if (order.size() < 2) throw InvalidArgument("neighborhood moves need at least two elements");
  switch (kind) {
    case NeighborhoodKind::Swap1: detail::swap_step(order, rng); break;
    case NeighborhoodKind::Swap2:
      for (int i = 0; i < 2; ++i) detail::swap_step(order, rng);
      break;
    case NeighborhoodKind::Swap3:
      for (int i = 0; i < 3; ++i) detail::swap_step(order, rng);
      break;
    case NeighborhoodKind::Shift1: detail::shift_step(order, rng); break;
    case NeighborhoodKind::Mirror: detail::mirror_step(order, rng); break;
    case NeighborhoodKind::ManyShift: detail::many_shift_step(order, rng); break;
    case NeighborhoodKind::MirrorShift:
      if (rng.below(2) == 0) {
        detail::mirror_step(order, rng);
      } else {
        detail::many_shift_step(order, rng);
      }
      break;
  }
}

inline Scheme propose(const Scheme& s, NeighborhoodKind kind, Rng& rng) {
  std::vector<VarIndex> next = s.order();
  propose_in_place(next, kind, rng);
  return Scheme(std::move(next));
}

/// All n(n-1)/2 single-swap neighbors, position pairs in lexicographic order.
inline std::vector<Scheme> swap_neighbors(const Scheme& s) {
  std::vector<Scheme> out;
  const std::size_t n = s.size();
  if (n < 2) return out;
  out.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<VarIndex> v = s.order();
      std::swap(v[i], v[j]);
      out.emplace_back(std::move(v));
    }
  }
  return out;
}

}  // namespace hornopt
