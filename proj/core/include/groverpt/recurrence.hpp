#pragma once

#include <optional>
#include <vector>

#include "groverpt/exppoly.hpp"
#include "groverpt/series.hpp"

namespace groverpt {

/// One order of the coupled family
///   f_0 = sin^2 2Theta,  g_0 = cos^2 2Theta,
///   f_k = conv(f_{k-1}, cos^2 2phi) + conv(g_{k-1}, sin^2 2phi),
///   g_k = conv(g_{k-1}, cos^2 2phi) + conv(f_{k-1}, sin^2 2phi),
/// in both exact representations. The f series leads at power k+2, the g
/// series at power k; both carry only powers of the same parity as k.
struct OrderPair {
  int k = 0;
  TruncatedSeries f_series{0};
  TruncatedSeries g_series{0};
  std::optional<ExpPoly> f_closed;
  std::optional<ExpPoly> g_closed;
};

struct FgOptions {
  int max_order = 40;             // K
  int degree = 40;                // D: order-k series carried to degree k+D
  int closed_form_max_order = 10; // ExpPoly route computed for k <= this
};

/// Computes orders 0..K. Series for order k are carried to degree k+D so that
/// f_k/Theta^k retains degree D. Verifies the structural invariants (leading
/// powers, cross-representation agreement) while building.
std::vector<OrderPair> compute_fg(const FgOptions& opt = {});

/// F_k = f_k / Theta^k in both representations (series degree D; closed form
/// tagged with its divisor). Throws invariant_violation if the series has a
/// nonzero coefficient below power k.
struct FOrder {
  int k = 0;
  TruncatedSeries series{0};
  std::optional<ClosedFormF> closed;
};
FOrder F_of(const OrderPair& pair);

}  // namespace groverpt
