#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hillspec/matrix.hpp"

namespace hillspec {

// Finite-support complex sequence over integer indices: the Fourier
// coefficients v(k) of a 2-periodic potential (or of a test vector) in the
// orthonormal basis e^{ik pi x} with the (1/2)-integral pairing.
class CoeffSeq {
public:
    CoeffSeq() = default;
    explicit CoeffSeq(std::map<int, cx> entries);

    // absent indices read as exactly zero; storing a zero erases the index
    void set(int k, cx value);
    cx at(int k) const;

    bool empty() const { return entries_.empty(); }
    std::size_t support_size() const { return entries_.size(); }
    int min_index() const; // throws on empty sequence
    int max_index() const;
    // max(|min|, |max|), 0 for the zero sequence
    int support_radius() const;

    const std::map<int, cx>& entries() const { return entries_; }

    // metadata only: notional exponent of |v(k)| growth/decay
    std::optional<double> decay_class;

    bool operator==(const CoeffSeq& o) const { return entries_ == o.entries_; }

private:
    std::map<int, cx> entries_;
};

// Sequence space h^{s,n}: weight <k+n>^s with <j> = 1+|j|.
struct SpaceSpec {
    double s = 0.0;
    int n = 0;
};

struct SplitPotential {
    CoeffSeq v0;    // head, |k| <= cutoff
    CoeffSeq v1;    // tail
    double epsilon; // achieved tail bound target
    int cutoff;     // smallest N with ||v1||_{-m,0} <= epsilon
};

// (a*b)(k) = sum_j a(k-j) b(j), exact double sum over the finite supports.
CoeffSeq convolve(const CoeffSeq& a, const CoeffSeq& b);

// (sum_k <k+n>^{2s} |a(k)|^2)^{1/2}
double weighted_norm(const CoeffSeq& a, double s, int n);

// Smallest cutoff N with weighted_norm(tail, -m, 0) <= eps; head/tail
// partition the entries exactly.
SplitPotential split_tail(const CoeffSeq& v, int m, double eps);

CoeffSeq make_zero();
CoeffSeq make_constant(cx c);

// c_cos*cos(k pi x) + c_sin*sin(k pi x) per term, mapped to the two-sided
// exponential basis.
struct TrigTerm {
    int k;
    cx c_cos;
    cx c_sin;
};
CoeffSeq make_trig_poly(std::span<const TrigTerm> terms);

// Periodic Dirac comb amplitude*delta(x-x0): v(k) = (amplitude/2) e^{-ik pi x0},
// materialized on |k| <= window.
CoeffSeq make_dirac_comb(double amplitude, double x0, int window);

// |v(k)| = <k>^{m-1/2-eta} with an (m,eta)-independent random phase keyed by
// (seed,k), scaled so the full-sequence h^{-m} norm equals target_norm.
// The same seed reproduces the same coefficients at every window size.
CoeffSeq make_random_decay(int m, double eta, double target_norm, int window,
                           std::uint64_t seed);

// Largest singular value of the weighted convolution-by-a map
// h^{in} -> h^{out} truncated to the index window [-K, K].
double conv_norm_estimate(const CoeffSeq& a, SpaceSpec in_space, SpaceSpec out_space, int K);

// FNV-1a over the canonical (k, re-bits, im-bits) serialization.
std::uint64_t coeff_digest(const CoeffSeq& v);

// Potential files: CSV `k,re,im`, rows sorted by k, 17 significant digits.
std::string potential_to_csv(const CoeffSeq& v);
void write_potential_csv(const std::filesystem::path& path, const CoeffSeq& v);
CoeffSeq parse_potential_csv(const std::string& text);
CoeffSeq read_potential_csv(const std::filesystem::path& path);

// splittable counter-based generator: value for stream position (seed, k)
std::uint64_t counter_rng(std::uint64_t seed, std::int64_t k);

} // namespace hillspec
