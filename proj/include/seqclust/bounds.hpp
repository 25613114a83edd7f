#pragma once

// Closed-form error and stopping-time bounds for SLINK / SLINK-SEQ with MMD
// estimates, in terms of the separations d_I < d_H, the kernel bound G, the
// problem size (M sequences, K clusters) and two free parameters:
//
//   d_th in (d_I, d_H)                    default (d_I + d_H) / 2
//   delta in (0, 1 - sqrt(d_I / d_H))     default half that interval
//
// Each bound carries a flag saying whether n (or C) lies in the regime where
// the concentration argument behind it applies.

#include <cstddef>
#include <optional>

namespace seqclust {

struct BoundParams {
    double d_i = 0.0;
    double d_h = 0.0;
    double d_th = 0.0;
    double kernel_bound = 1.0;
    std::size_t m = 2;
    std::size_t k = 2;
    double delta = 0.0;
    double c = 0.0;  // threshold scale; sequential bounds only

    // Fills defaults for d_th and delta, then validates. Throws
    // std::invalid_argument when d_I >= d_H or any parameter is out of range.
    static BoundParams make(double d_i, double d_h, std::size_t m, std::size_t k,
                            double kernel_bound = 1.0, std::optional<double> d_th = {},
                            std::optional<double> delta = {}, double c = 0.0);

    void validate() const;
};

struct Bound {
    double value;
    bool valid;
};

struct DerivedConstants {
    double a_h, b_h;        // inter-cluster term: 2 M^2, (d_H - d_th)^2 / 16G
    double a_i, b_i;        // intra-cluster term: 2 K 2^M, (d_th - d_I)^2 / 16G
    double a_f, b_f;        // 2 max(a_I, a_H), min(b_I, b_H)
    double b_f_midpoint;    // (d_H - d_I)^2 / 64G, equal to b_f at the default d_th
    double n_fss;           // FSS validity threshold max(64G/(d_H-d_th)^2, 64G/(d_th-d_I)^2)
    double n_tilde;         // n_fss / (1 - delta)^2
    double n_m;             // (sqrt(n_tilde) + C / ((1 - delta) d_H))^2
    double c_m;             // smallest admissible C
    double alpha1;          // min(delta^2 / 16G, b_f / ((1 - delta)^2 d_H^2))
    double alpha;           // alpha1 * d_H^2
};

DerivedConstants seq_constants(const BoundParams& p);

// P_e <= a_f exp(-b_f n) for the fixed-sample-size algorithm.
Bound fss_error_bound(double n, const BoundParams& p);

// P(MMD estimate <= d0) for a cross-cluster pair, d0 < d_H.
Bound lemma1_tail(double n, double d0, const BoundParams& p);
// P(MMD estimate >= d0) for a pair closer than d_I, d0 > d_I.
Bound lemma2_tail(double n, double d0, const BoundParams& p);

// P(N > n) for the sequential algorithm with threshold C / sqrt(n), C = p.c.
Bound stopping_tail_bound(double n, const BoundParams& p);

// Error bound of the sequential algorithm at threshold scale c; valid iff
// c > C_M.
Bound seq_error_bound(double c, const BoundParams& p);

}  // namespace seqclust
