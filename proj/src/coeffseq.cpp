#include "hillspec/coeffseq.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hillspec {

namespace {

double angle_weight(int j) { return 1.0 + std::abs(j); }

double weight_pow(int j, double s) {
    if (s == 0.0) return 1.0;
    return std::pow(angle_weight(j), s);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t counter_rng(std::uint64_t seed, std::int64_t k) {
    return splitmix64(splitmix64(seed) ^ splitmix64(static_cast<std::uint64_t>(k) + 0x51ed270b7a2cf1ULL));
}

CoeffSeq::CoeffSeq(std::map<int, cx> entries) {
    for (auto& [k, v] : entries)
        if (v != cx(0.0, 0.0)) entries_.emplace(k, v);
}

void CoeffSeq::set(int k, cx value) {
    if (value == cx(0.0, 0.0))
        entries_.erase(k);
    else
        entries_[k] = value;
}

cx CoeffSeq::at(int k) const {
    auto it = entries_.find(k);
    return it == entries_.end() ? cx(0.0, 0.0) : it->second;
}

int CoeffSeq::min_index() const {
    if (entries_.empty()) throw std::logic_error("CoeffSeq: empty sequence has no support bounds");
    return entries_.begin()->first;
}

int CoeffSeq::max_index() const {
    if (entries_.empty()) throw std::logic_error("CoeffSeq: empty sequence has no support bounds");
    return entries_.rbegin()->first;
}

int CoeffSeq::support_radius() const {
    if (entries_.empty()) return 0;
    return std::max(std::abs(min_index()), std::abs(max_index()));
}

CoeffSeq convolve(const CoeffSeq& a, const CoeffSeq& b) {
    std::map<int, cx> out;
    for (const auto& [ka, va] : a.entries())
        for (const auto& [kb, vb] : b.entries())
            out[ka + kb] += va * vb;
    return CoeffSeq(std::move(out));
}

double weighted_norm(const CoeffSeq& a, double s, int n) {
    double sum = 0.0;
    for (const auto& [k, v] : a.entries()) {
        const double t = weight_pow(k + n, s) * std::abs(v);
        sum += t * t;
    }
    return std::sqrt(sum);
}

SplitPotential split_tail(const CoeffSeq& v, int m, double eps) {
    if (m < 1) throw std::invalid_argument("split_tail: m must be >= 1");
    if (!(eps > 0.0)) throw std::invalid_argument("split_tail: eps must be > 0");
    const int R = v.empty() ? 0 : v.support_radius();

    // tail2[N] = sum over |k| > N of <k>^{-2m} |v(k)|^2
    std::vector<double> shell(R + 1, 0.0);
    for (const auto& [k, val] : v.entries()) {
        const double t = weight_pow(k, -static_cast<double>(m)) * std::abs(val);
        shell[std::abs(k)] += t * t;
    }
    int N = R;
    double tail2 = 0.0;
    while (N > 0 && tail2 + shell[N] <= eps * eps) {
        tail2 += shell[N];
        --N;
    }

    SplitPotential sp;
    sp.epsilon = eps;
    sp.cutoff = N;
    std::map<int, cx> head, tail;
    for (const auto& [k, val] : v.entries())
        (std::abs(k) <= N ? head : tail).emplace(k, val);
    sp.v0 = CoeffSeq(std::move(head));
    sp.v1 = CoeffSeq(std::move(tail));
    return sp;
}

CoeffSeq make_zero() { return CoeffSeq(); }

CoeffSeq make_constant(cx c) {
    std::map<int, cx> e;
    e[0] = c;
    return CoeffSeq(std::move(e));
}

CoeffSeq make_trig_poly(std::span<const TrigTerm> terms) {
    std::map<int, cx> e;
    const cx ihalf(0.0, 0.5);
    for (const TrigTerm& t : terms) {
        if (t.k < 0) throw std::invalid_argument("make_trig_poly: term index must be >= 0");
        if (t.k == 0) {
            e[0] += t.c_cos; // sin(0) contributes nothing
            continue;
        }
        // cos(k pi x) = (e^{ik pi x} + e^{-ik pi x})/2
        e[t.k] += 0.5 * t.c_cos;
        e[-t.k] += 0.5 * t.c_cos;
        // sin(k pi x) = (e^{ik pi x} - e^{-ik pi x})/(2i)
        e[t.k] += -ihalf * t.c_sin;
        e[-t.k] += ihalf * t.c_sin;
    }
    return CoeffSeq(std::move(e));
}

CoeffSeq make_dirac_comb(double amplitude, double x0, int window) {
    if (window < 0) throw std::invalid_argument("make_dirac_comb: empty window");
    std::map<int, cx> e;
    for (int k = -window; k <= window; ++k) {
        const double phi = -static_cast<double>(k) * std::numbers::pi * x0;
        e[k] = 0.5 * amplitude * cx(std::cos(phi), std::sin(phi));
    }
    return CoeffSeq(std::move(e));
}

CoeffSeq make_random_decay(int m, double eta, double target_norm, int window,
                           std::uint64_t seed) {
    if (!(eta > 0.0)) throw std::invalid_argument("make_random_decay: eta must be > 0");
    if (window < 0) throw std::invalid_argument("make_random_decay: empty window");
    // ||v||_{-m}^2 over all of Z: sum_k <k>^{-2m} <k>^{2m-1-2eta}
    //                            = 1 + 2 (zeta(1+2 eta) - 1)
    const double full = 1.0 + 2.0 * (std::riemann_zeta(1.0 + 2.0 * eta) - 1.0);
    const double scale = target_norm / std::sqrt(full);
    const double expo = static_cast<double>(m) - 0.5 - eta;

    std::map<int, cx> e;
    for (int k = -window; k <= window; ++k) {
        const double mag = scale * weight_pow(k, expo);
        const double phi = 2.0 * std::numbers::pi *
                           (static_cast<double>(counter_rng(seed, k) >> 11) * 0x1.0p-53);
        e[k] = mag * cx(std::cos(phi), std::sin(phi));
    }
    CoeffSeq out(std::move(e));
    out.decay_class = expo;
    return out;
}

double conv_norm_estimate(const CoeffSeq& a, SpaceSpec in_space, SpaceSpec out_space, int K) {
    if (K < 0) throw std::invalid_argument("conv_norm_estimate: window must be >= 0");
    const int n = 2 * K + 1;
    Matrix M(n, n);
    for (int i = 0; i < n; ++i) {
        const int k = i - K;
        const double wout = weight_pow(k + out_space.n, out_space.s);
        for (int j = 0; j < n; ++j) {
            const int l = j - K;
            const cx alk = a.at(k - l);
            if (alk == cx(0.0, 0.0)) continue;
            M(i, j) = wout * alk * weight_pow(l + in_space.n, -in_space.s);
        }
    }
    return la::sigma_max(M);
}

std::uint64_t coeff_digest(const CoeffSeq& v) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](const void* p, std::size_t len) {
        const unsigned char* b = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= b[i];
            h *= 0x100000001b3ULL;
        }
    };
    for (const auto& [k, val] : v.entries()) {
        const std::int64_t kk = k;
        double re = val.real(), im = val.imag();
        mix(&kk, sizeof kk);
        mix(&re, sizeof re);
        mix(&im, sizeof im);
    }
    return h;
}

std::string potential_to_csv(const CoeffSeq& v) {
    std::string out = "k,re,im\n";
    char buf[96];
    for (const auto& [k, val] : v.entries()) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", k, val.real(), val.imag());
        out += buf;
    }
    return out;
}

void write_potential_csv(const std::filesystem::path& path, const CoeffSeq& v) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for write: " + path.string());
    f << potential_to_csv(v);
}

CoeffSeq parse_potential_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("potential csv: empty file");
    if (line.ends_with('\r')) line.pop_back();
    if (line != "k,re,im") throw std::runtime_error("potential csv: bad header: " + line);
    std::map<int, cx> e;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.ends_with('\r')) line.pop_back();
        if (line.empty()) continue;
        int k;
        double re, im;
        char trailing;
        const int got = std::sscanf(line.c_str(), "%d,%lf,%lf%c", &k, &re, &im, &trailing);
        if (got != 3)
            throw std::runtime_error("potential csv: malformed row " + std::to_string(lineno) +
                                     ": " + line);
        if (!std::isfinite(re) || !std::isfinite(im))
            throw std::runtime_error("potential csv: non-finite value at row " +
                                     std::to_string(lineno));
        if (e.count(k))
            throw std::runtime_error("potential csv: duplicate index k=" + std::to_string(k));
        e[k] = cx(re, im);
    }
    return CoeffSeq(std::move(e));
}

CoeffSeq read_potential_csv(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open: " + path.string());
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_potential_csv(ss.str());
}

} // namespace hillspec
