#include "groverpt/recurrence.hpp"

#include <stdexcept>
#include <string>

namespace groverpt {

std::vector<OrderPair> compute_fg(const FgOptions& opt) {
  if (opt.max_order < 0) throw std::invalid_argument("compute_fg: max_order must be >= 0");
  if (opt.degree < 2) throw std::invalid_argument("compute_fg: degree must be >= 2");

  const int K = opt.max_order;
  const int D = opt.degree;
  const int trig_cap = K + D;
  const TruncatedSeries cos2 = taylor_trig(TrigKind::cos_sq_2phi, trig_cap);
  const TruncatedSeries sin2 = taylor_trig(TrigKind::sin_sq_2phi, trig_cap);
  const ExpPoly cos2_ep = ExpPoly::cos_sq_2theta();
  const ExpPoly sin2_ep = ExpPoly::sin_sq_2theta();

  std::vector<OrderPair> orders;
  orders.reserve(static_cast<size_t>(K) + 1);

  OrderPair base;
  base.k = 0;
  base.f_series = taylor_trig(TrigKind::sin_sq_2phi, D);
  base.g_series = taylor_trig(TrigKind::cos_sq_2phi, D);
  base.f_closed = sin2_ep;
  base.g_closed = cos2_ep;
  orders.push_back(std::move(base));

  for (int k = 1; k <= K; ++k) {
    const OrderPair& prev = orders.back();
    OrderPair cur;
    cur.k = k;
    const int cap = k + D;
    cur.f_series = series_convolve(prev.f_series, cos2, cap);
    cur.f_series += series_convolve(prev.g_series, sin2, cap);
    cur.g_series = series_convolve(prev.g_series, cos2, cap);
    cur.g_series += series_convolve(prev.f_series, sin2, cap);
    if (k <= opt.closed_form_max_order && prev.f_closed && prev.g_closed) {
      cur.f_closed = ep_convolve(*prev.f_closed, cos2_ep) + ep_convolve(*prev.g_closed, sin2_ep);
      cur.g_closed = ep_convolve(*prev.g_closed, cos2_ep) + ep_convolve(*prev.f_closed, sin2_ep);
    }

    // Leading-order invariants: f_k starts exactly at k+2, g_k exactly at k.
    if (cur.f_series.first_nonzero() != k + 2)
      throw internal_consistency_error("compute_fg: f_" + std::to_string(k) + " does not lead at power " +
                                       std::to_string(k + 2));
    if (cur.g_series.first_nonzero() != k)
      throw internal_consistency_error("compute_fg: g_" + std::to_string(k) + " does not lead at power " +
                                       std::to_string(k));
    // The two representations must agree exactly.
    if (cur.f_closed && cur.f_closed->to_series(cap) != cur.f_series)
      throw internal_consistency_error("compute_fg: f_" + std::to_string(k) + " closed form disagrees with series");
    if (cur.g_closed && cur.g_closed->to_series(cap) != cur.g_series)
      throw internal_consistency_error("compute_fg: g_" + std::to_string(k) + " closed form disagrees with series");
    orders.push_back(std::move(cur));
  }
  return orders;
}

FOrder F_of(const OrderPair& pair) {
  FOrder out;
  out.k = pair.k;
  out.series = pair.f_series.divided_by_power(pair.k);
  if (pair.f_closed) out.closed = ClosedFormF{*pair.f_closed, pair.k};
  return out;
}

}  // namespace groverpt
