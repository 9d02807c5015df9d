#pragma once

#include <array>
#include <string_view>

namespace qedmap {

enum class Helicity { R, L };

/// +1 for R, -1 for L (twice the fermion helicity, the photon helicity).
constexpr int sign(Helicity h) { return h == Helicity::R ? 1 : -1; }

struct HelicityPair {
  Helicity first;
  Helicity second;

  friend bool operator==(const HelicityPair&, const HelicityPair&) = default;
};

/// Two-helicity basis in the order (RR, RL, LR, LL).
inline constexpr std::array<HelicityPair, 4> kHelicityBasis = {{
    {Helicity::R, Helicity::R},
    {Helicity::R, Helicity::L},
    {Helicity::L, Helicity::R},
    {Helicity::L, Helicity::L},
}};

constexpr int basis_index(HelicityPair pair) {
  return 2 * (pair.first == Helicity::L ? 1 : 0) + (pair.second == Helicity::L ? 1 : 0);
}

inline constexpr std::array<std::string_view, 4> kBasisLabels = {"RR", "RL", "LR", "LL"};

}  // namespace qedmap
