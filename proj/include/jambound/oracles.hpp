// SPDX-License-Identifier: Apache-2.0
// Part of jambound: mutual-information limits for coarsely quantized
// MIMO receivers under jamming.
//
// Numerical verifiers built from first principles rather than from the
// closed forms in bounds.hpp: brute-force flip probabilities, boundary
// searches, exact and Monte Carlo mutual information for tiny systems.
// Their whole purpose is to be independent of what they check.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "bounds.hpp"
#include "channels.hpp"
#include "complex_matrix.hpp"
#include "linalg.hpp"
#include "philox.hpp"
#include "quadrature.hpp"
#include "quantizer.hpp"
#include "specfun.hpp"

namespace jambound {

namespace detail {

inline double normal_cdf(double t) { return 0.5 * erfc(-t * 0.7071067811865476); }

inline double gaussian_pdf(double x, double sigma) {
    const double z = x / sigma;
    return std::exp(-0.5 * z * z) / (sigma * 2.5066282746310002 /* sqrt(2 pi) */);
}

// Cut points that let a fixed-budget doubling rule resolve transition
// layers of width `layer` around each boundary. A perturbation with a
// small standard deviation confines all the action to such layers; a
// uniform panel grid over a wide piece can then accept an estimate of
// zero before any panel midpoint has even touched the layer. Dyadic
// offsets doubling away from each boundary (stopping halfway to the
// neighbor) keep every piece's feature width at its own scale.
inline std::vector<double> layered_cuts(const std::vector<double>& boundaries,
                                        double layer, double lo, double hi) {
    std::vector<double> cuts;
    cuts.reserve(boundaries.size() * 8);
    for (std::size_t i = 0; i < boundaries.size(); ++i) {
        const double g = boundaries[i];
        cuts.push_back(g);
        if (!(layer > 0.0)) continue;
        const double left_room = (i == 0) ? g - lo : 0.5 * (g - boundaries[i - 1]);
        const double right_room =
            (i + 1 == boundaries.size()) ? hi - g : 0.5 * (boundaries[i + 1] - g);
        for (double off = layer; off < left_room; off *= 2.0) cuts.push_back(g - off);
        for (double off = layer; off < right_room; off *= 2.0) cuts.push_back(g + off);
    }
    return cuts;
}

}  // namespace detail

// Scalar test channel: the quantizer input is d + r, where d is
// zero-mean Gaussian interference-plus-noise with variance sigma_d_sq
// and r is the useful signal with power bound E r^2 <= R. r is either
// Gaussian with variance R, or the symmetric two-point distribution
// +-sqrt(R/p) with mass p/2 each (and 0 otherwise), which meets the
// power bound with equality for every p in (0, 1].
struct ScalarChannel {
    enum class RDist { gaussian, two_point };

    double R = 0.0;
    double sigma_d_sq = 1.0;
    RDist r_dist = RDist::gaussian;
    double p = 1.0;  // two_point mass parameter

    static ScalarChannel make_gaussian(double R, double sigma_d_sq) {
        ScalarChannel ch;
        ch.R = R;
        ch.sigma_d_sq = sigma_d_sq;
        ch.r_dist = RDist::gaussian;
        ch.validate();
        return ch;
    }

    static ScalarChannel make_two_point(double R, double sigma_d_sq, double p) {
        ScalarChannel ch;
        ch.R = R;
        ch.sigma_d_sq = sigma_d_sq;
        ch.r_dist = RDist::two_point;
        ch.p = p;
        ch.validate();
        return ch;
    }

    void validate() const {
        if (!(R >= 0.0) || !std::isfinite(R)) {
            throw std::domain_error("ScalarChannel: R must be finite and >= 0");
        }
        if (!(sigma_d_sq > 0.0)) {
            throw std::domain_error("ScalarChannel: sigma_d_sq must be > 0");
        }
        if (r_dist == RDist::two_point && !(p > 0.0 && p <= 1.0)) {
            throw std::domain_error("ScalarChannel: two_point p must be in (0, 1]");
        }
    }

    double sinr() const { return R / sigma_d_sq; }
};

// Exact probability that adding r moves the quantizer output, given
// the interference value d.
inline Probability conditional_flip_probability(const ScalarQuantizer& q,
                                                const ScalarChannel& ch, double d) {
    ch.validate();
    if (ch.R == 0.0) return Probability(0.0);
    const std::int64_t cell = quantize(q, d);
    const double lo = (cell == 0) ? -std::numeric_limits<double>::infinity()
                                  : q.boundaries[std::size_t(cell - 1)];
    const double hi = (cell == q.levels - 1) ? std::numeric_limits<double>::infinity()
                                             : q.boundaries[std::size_t(cell)];
    if (ch.r_dist == ScalarChannel::RDist::gaussian) {
        const double sr = std::sqrt(ch.R);
        // stay in [lo, hi): r in [lo - d, hi - d)
        const double stay = detail::normal_cdf((hi - d) / sr) - detail::normal_cdf((lo - d) / sr);
        return Probability(std::clamp(1.0 - stay, 0.0, 1.0));
    }
    const double a = std::sqrt(ch.R / ch.p);
    double flip = 0.0;
    if (quantize(q, d + a) != cell) flip += 0.5 * ch.p;
    if (quantize(q, d - a) != cell) flip += 0.5 * ch.p;
    return Probability(flip);
}

// Total flip probability Pr(Q(d + r) != Q(d)) by outer quadrature over
// d on [-10 sigma_d, 10 sigma_d], with exact inner probabilities. The
// integrand is discontinuous exactly at the cell boundaries (and, for
// two-point r, at the boundaries shifted by the atom), so the pieces
// are split there and each piece is smooth. For Gaussian r the pieces
// additionally refine dyadically toward each boundary, where the flip
// probability transitions over a width of sqrt(R).
inline Probability flip_probability_numeric(const ScalarQuantizer& q,
                                            const ScalarChannel& ch) {
    ch.validate();
    if (ch.R == 0.0) return Probability(0.0);
    const double sd = std::sqrt(ch.sigma_d_sq);
    std::vector<double> cuts;
    if (ch.r_dist == ScalarChannel::RDist::two_point) {
        cuts = q.boundaries;
        const double a = std::sqrt(ch.R / ch.p);
        for (double g : q.boundaries) {
            cuts.push_back(g - a);
            cuts.push_back(g + a);
        }
    } else {
        cuts = detail::layered_cuts(q.boundaries, std::sqrt(ch.R), -10.0 * sd, 10.0 * sd);
    }
    const auto integrand = [&](double d) {
        return detail::gaussian_pdf(d, sd) *
               conditional_flip_probability(q, ch, d).value();
    };
    const double v =
        integrate_piecewise(integrand, -10.0 * sd, 10.0 * sd, cuts, 1e-7);
    return Probability(std::clamp(v, 0.0, 1.0));
}

// Knobs of the boundary search. The defaults match how the search is
// used in the verification suite: 32 random starts plus one uniform
// grid, 200 coordinate-ascent sweeps with a geometrically decaying
// step. The seed makes the random starts reproducible.
struct SearchSettings {
    int random_starts = 32;
    int iterations = 200;
    double initial_step = 1.0;  // in units of sqrt(sigma_d_sq + R)
    double decay = 0.97;
    std::uint64_t seed = 0x5EA2C4ull;
    double objective_rel_tol = 1e-6;
};

struct SearchOutcome {
    double value = 0.0;                // best flip probability found
    std::vector<double> boundaries;    // where it was found
};

// Lower-bounds the worst case over all M-level boundary sets of the
// flip probability, by multi-start coordinate ascent. Any value it
// returns is an actual flip probability of an actual quantizer, so it
// can never legitimately exceed the closed-form envelope; that is
// exactly what makes it a useful stress test.
inline SearchOutcome flip_probability_search(std::int64_t m, const ScalarChannel& ch,
                                             const SearchSettings& settings = {}) {
    if (m < 2) throw std::domain_error("flip_probability_search: M must be >= 2");
    ch.validate();
    const std::size_t dim = std::size_t(m - 1);
    const double scale = std::sqrt(ch.sigma_d_sq + ch.R);

    const auto objective = [&](const std::vector<double>& gamma) {
        ScalarQuantizer q(m, gamma);
        const double sd = std::sqrt(ch.sigma_d_sq);
        std::vector<double> cuts;
        if (ch.r_dist == ScalarChannel::RDist::two_point) {
            cuts = gamma;
            const double a = std::sqrt(ch.R / ch.p);
            for (double g : gamma) {
                cuts.push_back(g - a);
                cuts.push_back(g + a);
            }
        } else {
            cuts = detail::layered_cuts(gamma, std::sqrt(ch.R), -10.0 * sd, 10.0 * sd);
        }
        const auto f = [&](double d) {
            return detail::gaussian_pdf(d, sd) *
                   conditional_flip_probability(q, ch, d).value();
        };
        return integrate_piecewise(f, -10.0 * sd, 10.0 * sd, cuts,
                                   settings.objective_rel_tol);
    };

    if (ch.R == 0.0) {
        ScalarQuantizer grid = uniform_quantizer(m, std::max(scale, 1e-3));
        return SearchOutcome{0.0, grid.boundaries};
    }

    // Starting points: a symmetric uniform grid, then random draws.
    std::vector<std::vector<double>> starts;
    starts.push_back(uniform_quantizer(m, 4.0 * scale / double(m)).boundaries);
    SeededRng rng(settings.seed);
    for (int s = 0; s < settings.random_starts; ++s) {
        SeededRng sub = rng.substream(std::uint64_t(s));
        std::vector<double> gamma(dim);
        for (auto& g : gamma) g = scale * sub.next_gaussian();
        std::sort(gamma.begin(), gamma.end());
        // enforce strict increase against coincident draws
        for (std::size_t k = 1; k < dim; ++k) {
            if (!(gamma[k] > gamma[k - 1])) {
                gamma[k] = gamma[k - 1] + 1e-9 * scale;
            }
        }
        starts.push_back(std::move(gamma));
    }

    SearchOutcome best;
    best.value = -1.0;
    for (auto& gamma : starts) {
        double current = objective(gamma);
        double step = settings.initial_step * scale;
        for (int it = 0; it < settings.iterations; ++it) {
            for (std::size_t k = 0; k < dim; ++k) {
                for (double dir : {+1.0, -1.0}) {
                    const double old = gamma[k];
                    const double prop = old + dir * step;
                    // keep the vector strictly sorted
                    if (k > 0 && !(prop > gamma[k - 1])) continue;
                    if (k + 1 < dim && !(prop < gamma[k + 1])) continue;
                    gamma[k] = prop;
                    const double v = objective(gamma);
                    if (v > current) {
                        current = v;
                        break;  // accept, then try the next coordinate
                    }
                    gamma[k] = old;
                }
            }
            step *= settings.decay;
        }
        if (current > best.value) {
            best.value = current;
            best.boundaries = gamma;
        }
    }
    // Re-evaluate the winner at tight tolerance so the reported value
    // is a trustworthy probability, not a loosely integrated one.
    ScalarQuantizer bq(m, best.boundaries);
    best.value = flip_probability_numeric(bq, ch).value();
    return best;
}

// The spread integral: E_d[ g(d / (M-1)) ] with g(x) = min{1, R/x^2}
// and Gaussian d. Only defined for Gaussian r-channels, because the
// closed form it validates assumes a Gaussian d and the R here is the
// same power bound. Kinks of g sit at |d| = (M-1) sqrt(R).
inline double spread_bound_numeric(std::int64_t m, const ScalarChannel& ch) {
    if (m < 2) throw std::domain_error("spread_bound_numeric: M must be >= 2");
    ch.validate();
    if (ch.r_dist != ScalarChannel::RDist::gaussian) {
        throw std::domain_error("spread_bound_numeric: gaussian channels only");
    }
    if (ch.R == 0.0) return 0.0;
    const double sd = std::sqrt(ch.sigma_d_sq);
    const double kink = double(m - 1) * std::sqrt(ch.R);
    const auto g = [&](double x) {
        const double ax = std::fabs(x);
        if (ax <= std::sqrt(ch.R)) return 1.0;
        return ch.R / (ax * ax);
    };
    const auto integrand = [&](double d) {
        return detail::gaussian_pdf(d, sd) * g(d / double(m - 1));
    };
    // Beyond the kink the integrand decays like 1/d^2, which uniform
    // panels cannot resolve when the kink sits decades below sigma_d.
    // Doubling cut points keep every piece at constant relative width.
    std::vector<double> cuts{-kink, kink};
    for (double c = kink; c < 10.0 * sd; c *= 2.0) {
        cuts.push_back(c);
        cuts.push_back(-c);
    }
    return integrate_piecewise(integrand, -10.0 * sd, 10.0 * sd, cuts, 1e-9);
}

// Exact conditional mutual information I(q; r | d) = E_d[H(Q(d+r)|d)]
// in bits, for Gaussian r. Inner cell probabilities are exact normal
// CDF differences; the outer integral runs over d. Cells further than
// 13.5 signal standard deviations from d are skipped: their mass is
// below 1e-41 and contributes nothing at the 1e-5 accuracy target.
inline double scalar_conditional_mi_numeric(const ScalarQuantizer& q,
                                            const ScalarChannel& ch) {
    ch.validate();
    if (ch.r_dist != ScalarChannel::RDist::gaussian) {
        throw std::domain_error("scalar_conditional_mi_numeric: gaussian channels only");
    }
    if (ch.R == 0.0) return 0.0;
    const double sd = std::sqrt(ch.sigma_d_sq);
    const double sr = std::sqrt(ch.R);
    const double inv_ln2 = 1.4426950408889634;

    const auto cell_entropy = [&](double d) {
        // entropy of Q(d + r) in bits
        const double window = 13.5 * sr;
        const auto& gb = q.boundaries;
        const std::size_t first =
            std::size_t(std::lower_bound(gb.begin(), gb.end(), d - window) - gb.begin());
        const std::size_t last =
            std::size_t(std::upper_bound(gb.begin(), gb.end(), d + window) - gb.begin());
        // contributing cells are [first, last] inclusive in cell index
        double h = 0.0;
        double prev_cdf = (first == 0) ? 0.0
                                       : detail::normal_cdf((gb[first - 1] - d) / sr);
        for (std::size_t cell = first; cell <= last; ++cell) {
            const double upper_cdf = (cell < gb.size())
                                         ? detail::normal_cdf((gb[cell] - d) / sr)
                                         : 1.0;
            const double p = upper_cdf - prev_cdf;
            prev_cdf = upper_cdf;
            if (p > 0.0) h -= p * std::log(p) * inv_ln2;
        }
        return h;
    };

    const auto integrand = [&](double d) {
        return detail::gaussian_pdf(d, sd) * cell_entropy(d);
    };
    // the entropy is only nonzero within O(sr) of a boundary, so the
    // pieces refine dyadically toward each one
    const std::vector<double> cuts =
        detail::layered_cuts(q.boundaries, sr, -10.0 * sd, 10.0 * sd);
    return integrate_piecewise(integrand, -10.0 * sd, 10.0 * sd, cuts, 1e-6);
}

// Miniature end-to-end system: QPSK users, optional single-antenna
// jammer, 1-bit ADCs on each real component. Small enough that the
// channel law P(q | s) can be written down or estimated directly.
struct TinySystem {
    ComplexMatrix H;  // B x U
    ComplexMatrix J;  // B x I
    double rho = 0.0;
    double n0 = 1.0;

    void validate() const {
        if (H.rows() > 2 || H.cols() > 2 || H.cols() < 1 || J.cols() > 1 ||
            J.rows() != H.rows()) {
            throw std::domain_error("TinySystem: need B <= 2, U in {1,2}, I <= 1");
        }
        if (!(rho >= 0.0) || !(n0 > 0.0)) {
            throw std::domain_error("TinySystem: need rho >= 0 and n0 > 0");
        }
    }
};

namespace detail {

// The four unit-power QPSK symbols.
inline std::complex<double> qpsk_symbol(int idx) {
    static const double s = 0.7071067811865476;
    switch (idx & 3) {
        case 0: return {s, s};
        case 1: return {s, -s};
        case 2: return {-s, s};
        default: return {-s, -s};
    }
}

}  // namespace detail

// Exact I(q; s) in bits for a tiny system whose 2B sign outputs are
// conditionally independent given s. That holds when there is at most
// one antenna (any jammer) or no jammer at all (any B <= 2): a shared
// jammer waveform across two antennas would correlate the components,
// which is what the Monte Carlo variant is for.
inline double tiny_system_mi_exact(const TinySystem& sys) {
    sys.validate();
    const std::size_t b = sys.H.rows();
    const std::size_t u = sys.H.cols();
    const std::size_t i = sys.J.cols();
    const bool effective_jammer = (i == 1) && sys.rho > 0.0;
    if (!(b == 1 || !effective_jammer)) {
        throw std::domain_error(
            "tiny_system_mi_exact: components correlated (B = 2 with an active jammer); "
            "use tiny_system_mi_mc");
    }
    const std::size_t n_sym = std::size_t(1) << (2 * u);  // 4^U
    const std::size_t n_out = std::size_t(1) << (2 * b);  // 2^(2B)

    // P(q | s) factorizes across the 2B sign components.
    std::vector<std::vector<double>> p_q_given_s(n_sym, std::vector<double>(n_out, 1.0));
    for (std::size_t si = 0; si < n_sym; ++si) {
        // noiseless receive point
        std::vector<std::complex<double>> mean(b, 0.0);
        for (std::size_t uu = 0; uu < u; ++uu) {
            const auto sym = detail::qpsk_symbol(int((si >> (2 * uu)) & 3));
            for (std::size_t bb = 0; bb < b; ++bb) mean[bb] += sys.H(bb, uu) * sym;
        }
        for (std::size_t bb = 0; bb < b; ++bb) {
            const double j2 = (i == 1) ? std::norm(sys.J(bb, 0)) : 0.0;
            const double comp_sigma = std::sqrt(0.5 * (sys.rho * j2 + sys.n0));
            const double mu[2] = {mean[bb].real(), mean[bb].imag()};
            for (int comp = 0; comp < 2; ++comp) {
                const std::size_t bit = 2 * bb + std::size_t(comp);
                // P(level 1) = P(mu + noise >= 0); both tails via erfc
                const double arg = mu[comp] / (comp_sigma * 1.4142135623730951);
                const double p1 = 0.5 * erfc(-arg);
                const double p0 = 0.5 * erfc(arg);
                for (std::size_t qi = 0; qi < n_out; ++qi) {
                    p_q_given_s[si][qi] *= ((qi >> bit) & 1) ? p1 : p0;
                }
            }
        }
    }

    const double prior = 1.0 / double(n_sym);
    std::vector<double> p_q(n_out, 0.0);
    for (std::size_t si = 0; si < n_sym; ++si) {
        for (std::size_t qi = 0; qi < n_out; ++qi) p_q[qi] += prior * p_q_given_s[si][qi];
    }
    double mi = 0.0;
    for (std::size_t si = 0; si < n_sym; ++si) {
        for (std::size_t qi = 0; qi < n_out; ++qi) {
            const double pqs = p_q_given_s[si][qi];
            if (pqs > 0.0 && p_q[qi] > 0.0) {
                mi += prior * pqs * std::log2(pqs / p_q[qi]);
            }
        }
    }
    return std::max(mi, 0.0);
}

struct McMiResult {
    double mi = 0.0;         // plug-in estimate, bits
    double std_error = 0.0;  // bootstrap standard error, bits
};

namespace detail {

// Binomial(n, p) sampler good enough for bootstrap resampling: plain
// inversion for small means, moment-matched rounded normal otherwise.
inline std::int64_t binomial_sample(SeededRng& rng, std::int64_t n, double p) {
    if (n <= 0 || p <= 0.0) return 0;
    if (p >= 1.0) return n;
    const double mean = double(n) * p;
    if (mean < 30.0 && n < 1000000) {
        // inversion through the CDF
        const double u = rng.next_double();
        double pmf = std::pow(1.0 - p, double(n));
        double cdf = pmf;
        std::int64_t k = 0;
        while (u > cdf && k < n) {
            pmf *= (double(n - k) / double(k + 1)) * (p / (1.0 - p));
            cdf += pmf;
            ++k;
        }
        return k;
    }
    const double sdv = std::sqrt(mean * (1.0 - p));
    const double g = rng.next_gaussian();
    double v = std::round(mean + sdv * g);
    return std::int64_t(std::clamp(v, 0.0, double(n)));
}

inline double plugin_mi_from_counts(const std::vector<std::vector<std::int64_t>>& counts,
                                    std::int64_t trials) {
    const std::size_t n_sym = counts.size();
    const std::size_t n_out = counts[0].size();
    const double prior = 1.0 / double(n_sym);
    std::vector<double> p_q(n_out, 0.0);
    for (std::size_t si = 0; si < n_sym; ++si) {
        for (std::size_t qi = 0; qi < n_out; ++qi) {
            p_q[qi] += prior * double(counts[si][qi]) / double(trials);
        }
    }
    double mi = 0.0;
    for (std::size_t si = 0; si < n_sym; ++si) {
        for (std::size_t qi = 0; qi < n_out; ++qi) {
            const double pqs = double(counts[si][qi]) / double(trials);
            if (pqs > 0.0 && p_q[qi] > 0.0) {
                mi += prior * pqs * std::log2(pqs / p_q[qi]);
            }
        }
    }
    return std::max(mi, 0.0);
}

}  // namespace detail

// Monte Carlo I(q; s) for tiny systems, covering the correlated case
// (two antennas sharing one jammer) that the exact oracle refuses.
// The per-component quantizer is a symmetric uniform M-level grid
// spanning roughly +-2 component standard deviations (exactly {0} for
// M = 2, matching the exact oracle). Deterministic for a fixed rng.
inline McMiResult tiny_system_mi_mc(const TinySystem& sys, std::int64_t m_levels,
                                    std::int64_t trials, const SeededRng& rng,
                                    int bootstrap_reps = 200) {
    sys.validate();
    if (m_levels < 2 || m_levels > 4) {
        throw std::domain_error("tiny_system_mi_mc: M must be in [2, 4]");
    }
    if (trials < 100000) {
        throw std::domain_error("tiny_system_mi_mc: need trials >= 1e5");
    }
    const std::size_t b = sys.H.rows();
    const std::size_t u = sys.H.cols();
    const std::size_t i = sys.J.cols();
    const std::size_t n_sym = std::size_t(1) << (2 * u);
    std::size_t n_out = 1;
    for (std::size_t c = 0; c < 2 * b; ++c) n_out *= std::size_t(m_levels);
    if (n_out > 256) {
        throw std::domain_error("tiny_system_mi_mc: outcome alphabet too large");
    }

    // average per-component power sets the quantizer span
    double avg_power = 0.0;
    for (std::size_t bb = 0; bb < b; ++bb) {
        double row = sys.n0;
        for (std::size_t uu = 0; uu < u; ++uu) row += std::norm(sys.H(bb, uu));
        if (i == 1) row += sys.rho * std::norm(sys.J(bb, 0));
        avg_power += row / double(b);
    }
    const double comp_sigma = std::sqrt(0.5 * avg_power);
    const ScalarQuantizer q = uniform_quantizer(m_levels, 4.0 * comp_sigma / double(m_levels));

    std::vector<std::vector<std::int64_t>> counts(
        n_sym, std::vector<std::int64_t>(n_out, 0));
    for (std::size_t si = 0; si < n_sym; ++si) {
        std::vector<std::complex<double>> mean(b, 0.0);
        for (std::size_t uu = 0; uu < u; ++uu) {
            const auto sym = detail::qpsk_symbol(int((si >> (2 * uu)) & 3));
            for (std::size_t bb = 0; bb < b; ++bb) mean[bb] += sys.H(bb, uu) * sym;
        }
        SeededRng sym_stream = rng.substream(si);
        for (std::int64_t t = 0; t < trials; ++t) {
            SeededRng trial = sym_stream.substream(std::uint64_t(t));
            std::complex<double> w = 0.0;
            if (i == 1 && sys.rho > 0.0) w = trial.next_complex_gaussian(sys.rho);
            std::size_t qi = 0;
            std::size_t base = 1;
            for (std::size_t bb = 0; bb < b; ++bb) {
                std::complex<double> y = mean[bb] + trial.next_complex_gaussian(sys.n0);
                if (i == 1) y += sys.J(bb, 0) * w;
                const std::int64_t lre = quantize(q, y.real());
                const std::int64_t lim = quantize(q, y.imag());
                qi += base * std::size_t(lre);
                base *= std::size_t(m_levels);
                qi += base * std::size_t(lim);
                base *= std::size_t(m_levels);
            }
            ++counts[si][qi];
        }
    }

    McMiResult res;
    res.mi = detail::plugin_mi_from_counts(counts, trials);

    // Bootstrap: conditionally on each s, resample the outcome counts
    // multinomially and recompute the plug-in value.
    SeededRng boot = rng.substream(0xB001ull);
    std::vector<double> reps;
    reps.reserve(std::size_t(bootstrap_reps));
    std::vector<std::vector<std::int64_t>> re(n_sym, std::vector<std::int64_t>(n_out, 0));
    for (int rep = 0; rep < bootstrap_reps; ++rep) {
        SeededRng rrng = boot.substream(std::uint64_t(rep));
        for (std::size_t si = 0; si < n_sym; ++si) {
            std::int64_t remaining = trials;
            double mass = 1.0;
            for (std::size_t qi = 0; qi < n_out; ++qi) {
                if (remaining <= 0 || mass <= 0.0) {
                    re[si][qi] = 0;
                    continue;
                }
                const double pk = double(counts[si][qi]) / double(trials);
                const double cond = std::clamp(pk / mass, 0.0, 1.0);
                const std::int64_t c = (qi + 1 == n_out)
                                           ? remaining
                                           : detail::binomial_sample(rrng, remaining, cond);
                re[si][qi] = c;
                remaining -= c;
                mass -= pk;
            }
        }
        reps.push_back(detail::plugin_mi_from_counts(re, trials));
    }
    double mean_rep = std::accumulate(reps.begin(), reps.end(), 0.0) / double(reps.size());
    double var = 0.0;
    for (double v : reps) var += (v - mean_rep) * (v - mean_rep);
    var /= double(reps.size() > 1 ? reps.size() - 1 : 1);
    res.std_error = std::sqrt(var);
    return res;
}

struct ProjectionReport {
    double max_abs_entry_mean = 0.0;  // largest |mean| over projected entries
    double max_entry_var_dev = 0.0;   // largest |E|x|^2 - 1| over entries
    double ks_distance = 0.0;         // two-sample KS between the two CDFs
};

// Two-sample Kolmogorov-Smirnov distance.
inline double ks_two_sample(std::vector<double> a, std::vector<double> bvals) {
    if (a.empty() || bvals.empty()) {
        throw std::invalid_argument("ks_two_sample: empty sample");
    }
    std::sort(a.begin(), a.end());
    std::sort(bvals.begin(), bvals.end());
    double d = 0.0;
    std::size_t ia = 0, ib = 0;
    while (ia < a.size() && ib < bvals.size()) {
        // compare right-continuous CDFs just after the smaller value, so
        // ties advance both sides before the gap is measured
        const double t = std::min(a[ia], bvals[ib]);
        while (ia < a.size() && a[ia] == t) ++ia;
        while (ib < bvals.size() && bvals[ib] == t) ++ib;
        const double fa = double(ia) / double(a.size());
        const double fb = double(ib) / double(bvals.size());
        d = std::max(d, std::fabs(fa - fb));
    }
    return d;
}

// Checks that projecting Rayleigh channels onto the complement of the
// jammer subspace behaves like simply removing I antennas: projected
// entries stay zero-mean unit-variance, and the lower bound's CDF
// matches the jammer-free CDF of the reduced array.
inline ProjectionReport projection_equivalence_check(const SeededRng& rng, std::size_t b,
                                                     std::size_t u, std::size_t i,
                                                     std::size_t samples,
                                                     double n0 = 1e-3) {
    if (!(b > i && i >= 1)) {
        throw std::domain_error("projection_equivalence_check: need B > I >= 1");
    }
    if (samples < 2) {
        throw std::domain_error("projection_equivalence_check: need samples >= 2");
    }
    const std::size_t pr = b - i;  // projected rows (generic rank)
    std::vector<std::complex<double>> entry_mean(pr * u, 0.0);
    std::vector<double> entry_pow(pr * u, 0.0);
    std::vector<double> lower(samples), reduced(samples);
    std::size_t used = 0;
    for (std::size_t t = 0; t < samples; ++t) {
        const ChannelPair cp = sample_rayleigh_pair(rng.substream(t), b, u, i);
        const ComplexMatrix uperp = orthonormal_complement(cp.J);
        const ComplexMatrix ht = multiply(adjoint(uperp), cp.H);
        lower[t] = jammer_free_mi(ht, n0);
        if (ht.rows() == pr) {
            ++used;
            for (std::size_t r = 0; r < pr; ++r) {
                for (std::size_t c = 0; c < u; ++c) {
                    entry_mean[r * u + c] += ht(r, c);
                    entry_pow[r * u + c] += std::norm(ht(r, c));
                }
            }
        }
        const ComplexMatrix fresh = sample_complex_gaussian(
            rng.substream(0x8000000000000000ull + t), pr, u, 1.0);
        reduced[t] = jammer_free_mi(fresh, n0);
    }
    ProjectionReport rep;
    for (std::size_t k = 0; k < pr * u; ++k) {
        rep.max_abs_entry_mean =
            std::max(rep.max_abs_entry_mean, std::abs(entry_mean[k]) / double(used));
        rep.max_entry_var_dev =
            std::max(rep.max_entry_var_dev, std::fabs(entry_pow[k] / double(used) - 1.0));
    }
    rep.ks_distance = ks_two_sample(lower, reduced);
    return rep;
}

}  // namespace jambound
