#include "seqclust/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace seqclust {

BoundParams BoundParams::make(double d_i, double d_h, std::size_t m, std::size_t k,
                              double kernel_bound, std::optional<double> d_th,
                              std::optional<double> delta, double c) {
    if (!(d_i >= 0.0) || !(d_h > d_i)) {
        throw std::invalid_argument("bounds require 0 <= d_I < d_H");
    }
    BoundParams p;
    p.d_i = d_i;
    p.d_h = d_h;
    p.kernel_bound = kernel_bound;
    p.m = m;
    p.k = k;
    p.c = c;
    p.d_th = d_th.value_or(0.5 * (d_i + d_h));
    p.delta = delta.value_or(0.5 * (1.0 - std::sqrt(d_i / d_h)));
    p.validate();
    return p;
}

void BoundParams::validate() const {
    if (!(d_i >= 0.0) || !(d_h > d_i)) {
        throw std::invalid_argument("bounds require 0 <= d_I < d_H");
    }
    if (!(d_th > d_i && d_th < d_h)) throw std::invalid_argument("d_th must lie in (d_I, d_H)");
    const double delta_max = 1.0 - std::sqrt(d_i / d_h);
    if (!(delta > 0.0 && delta < delta_max)) {
        throw std::invalid_argument("delta must lie in (0, 1 - sqrt(d_I / d_H))");
    }
    if (!(kernel_bound > 0.0)) throw std::invalid_argument("kernel bound must be positive");
    if (m < 2) throw std::invalid_argument("M must be at least 2");
    if (k < 1 || k > m) throw std::invalid_argument("K must be in [1, M]");
    if (c < 0.0) throw std::invalid_argument("C must be nonnegative");
}

namespace {

DerivedConstants derive(const BoundParams& p, double c) {
    p.validate();
    const double g = p.kernel_bound;
    const double m = static_cast<double>(p.m);
    const double gap_h = p.d_h - p.d_th;
    const double gap_i = p.d_th - p.d_i;
    const double one_minus = 1.0 - p.delta;

    DerivedConstants out{};
    out.a_h = 2.0 * m * m;
    out.b_h = gap_h * gap_h / (16.0 * g);
    out.a_i = 2.0 * static_cast<double>(p.k) * std::pow(2.0, m);
    out.b_i = gap_i * gap_i / (16.0 * g);
    out.a_f = 2.0 * std::max(out.a_i, out.a_h);
    out.b_f = std::min(out.b_i, out.b_h);
    out.b_f_midpoint = (p.d_h - p.d_i) * (p.d_h - p.d_i) / (64.0 * g);
    out.n_fss = std::max(64.0 * g / (gap_h * gap_h), 64.0 * g / (gap_i * gap_i));
    out.n_tilde = out.n_fss / (one_minus * one_minus);
    const double root = std::sqrt(out.n_tilde) + c / (one_minus * p.d_h);
    out.n_m = root * root;
    out.c_m = ((1.0 + p.delta) * std::sqrt(out.n_tilde) * p.d_i + 8.0 * std::sqrt(g)) /
              (one_minus - p.d_i / (one_minus * p.d_h));
    out.alpha1 = std::min(p.delta * p.delta / (16.0 * g),
                          out.b_f / (one_minus * one_minus * p.d_h * p.d_h));
    out.alpha = out.alpha1 * p.d_h * p.d_h;
    return out;
}

}  // namespace

DerivedConstants seq_constants(const BoundParams& p) { return derive(p, p.c); }

Bound fss_error_bound(double n, const BoundParams& p) {
    const auto dc = derive(p, p.c);
    return {dc.a_f * std::exp(-dc.b_f * n), n > dc.n_fss};
}

Bound lemma1_tail(double n, double d0, const BoundParams& p) {
    p.validate();
    if (!(d0 < p.d_h)) throw std::invalid_argument("Lemma 1 needs d0 < d_H");
    const double gap = p.d_h - d0;
    return {2.0 * std::exp(-n * gap * gap / (16.0 * p.kernel_bound)),
            n > 64.0 * p.kernel_bound / (gap * gap)};
}

Bound lemma2_tail(double n, double d0, const BoundParams& p) {
    p.validate();
    if (!(d0 > p.d_i)) throw std::invalid_argument("Lemma 2 needs d0 > d_I");
    const double gap = d0 - p.d_i;
    return {2.0 * std::exp(-n * gap * gap / (16.0 * p.kernel_bound)),
            n > 64.0 * p.kernel_bound / (gap * gap)};
}

Bound stopping_tail_bound(double n, const BoundParams& p) {
    const auto dc = derive(p, p.c);
    const double g = p.kernel_bound;
    const double m = static_cast<double>(p.m);
    const double dd = p.delta * p.d_h;
    const double value = dc.a_f * std::exp(-dc.b_f * n) +
                         2.0 * m * m * std::exp(-n * dd * dd / (16.0 * g));
    const double n_stop = std::pow((p.c + 8.0 * std::sqrt(g)) / ((1.0 - p.delta) * p.d_h), 2.0);
    return {value, n > std::max(dc.n_fss, n_stop)};
}

Bound seq_error_bound(double c, const BoundParams& p) {
    if (!(c > 0.0)) throw std::invalid_argument("C must be positive");
    const auto dc = derive(p, c);
    const double g = p.kernel_bound;
    const double one_minus = 1.0 - p.delta;
    const double first = dc.a_f / (1.0 - std::exp(-dc.b_f)) *
                         std::exp(-dc.b_f * c * c / (one_minus * one_minus * p.d_h * p.d_h));
    const double second = 2.0 * dc.n_m * std::exp(-p.delta * p.delta * c * c / (16.0 * g));
    return {first + second, c > dc.c_m};
}

}  // namespace seqclust
