#pragma once

// Candidate generation for (S, W) pairs with S = diag(e^{i phi1}, e^{i phi2})
// and W a 1/sqrt(d)-scaled sign or phase matrix. Every candidate is checked
// with verify_pair_direct before it reaches the sink; candidates whose W
// differ only by a global phase are emitted once, first occurrence wins.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "umebmub/bases.hpp"
#include "umebmub/linalg.hpp"
#include "umebmub/mub.hpp"

namespace umebmub {

class SearchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class SearchMode { exhaustive_signs, sylvester_orbit, random_phases };

inline std::string_view to_string(SearchMode m) {
    switch (m) {
        case SearchMode::exhaustive_signs: return "exhaustive_signs";
        case SearchMode::sylvester_orbit: return "sylvester_orbit";
        case SearchMode::random_phases: return "random_phases";
    }
    return "?";
}

inline SearchMode parse_search_mode(std::string_view s) {
    for (auto m : {SearchMode::exhaustive_signs, SearchMode::sylvester_orbit, SearchMode::random_phases})
        if (to_string(m) == s) return m;
    throw SearchError("unknown search mode '" + std::string(s) + "'");
}

struct SearchConfig {
    int d = 4;
    SearchMode mode = SearchMode::exhaustive_signs;
    std::size_t limit = 10;
    std::uint64_t seed = 0;
    double phi1 = 0.0;
    double phi2 = 0.0;
    // Draws for the randomized modes.
    std::size_t samples = 4096;
    // random_phases only: fixed root phases (row 0 of theta, then the roots of
    // the last-row and corner components). Empty means sample them.
    std::vector<double> roots;
    double tol = kDefaultEps;
    int max_d = 16;
};

struct Candidate {
    MubPairSpec spec;
    std::string provenance;
    bool verified = false;
};

struct SearchSummary {
    std::size_t examined = 0;    // patterns or samples generated
    std::size_t admissible = 0;  // W unitary
    std::size_t verified = 0;    // passed verify_pair_direct
    std::size_t emitted = 0;     // after global-phase deduplication and limit
};

inline constexpr int kExhaustiveMaxD = 4;

/// Portable uniform draw in [0, n) from a 64-bit engine.
inline std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % n;
}

/// Entry e (row-major) of sign pattern `mask` over n entries; the first entry
/// is the most significant bit and a set bit means +1.
inline int sign_of(std::uint64_t mask, int n_entries, int e) {
    return (mask >> (n_entries - 1 - e)) & 1U ? 1 : -1;
}

/// Rows pairwise orthogonal, i.e. a Hadamard matrix.
inline bool is_hadamard(const std::vector<int>& h, int d) {
    for (int r1 = 0; r1 < d; ++r1)
        for (int r2 = r1 + 1; r2 < d; ++r2) {
            int dot = 0;
            for (int c = 0; c < d; ++c) dot += h[r1 * d + c] * h[r2 * d + c];
            if (dot != 0) return false;
        }
    return true;
}

inline std::vector<int> sign_pattern(std::uint64_t mask, int d) {
    std::vector<int> h(static_cast<std::size_t>(d * d));
    for (int e = 0; e < d * d; ++e) h[e] = sign_of(mask, d * d, e);
    return h;
}

inline std::size_t count_hadamard_sign_matrices(int d) {
    if (d < 1 || d > kExhaustiveMaxD) throw SearchError("sign matrix count is limited to d <= 4");
    std::size_t count = 0;
    const std::uint64_t total = std::uint64_t{1} << (d * d);
    for (std::uint64_t mask = 0; mask < total; ++mask) count += is_hadamard(sign_pattern(mask, d), d);
    return count;
}

/// H_1 = [1], H_2n = [[H_n, H_n], [H_n, -H_n]].
inline std::vector<int> sylvester_hadamard(int d) {
    if (d < 1 || !std::has_single_bit(static_cast<unsigned>(d))) {
        throw SearchError("Sylvester construction needs a power of 2, got " + std::to_string(d));
    }
    std::vector<int> h{1};
    for (int n = 1; n < d; n *= 2) {
        std::vector<int> next(static_cast<std::size_t>(4 * n * n));
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                const int v = h[r * n + c];
                next[r * 2 * n + c] = v;
                next[r * 2 * n + c + n] = v;
                next[(r + n) * 2 * n + c] = v;
                next[(r + n) * 2 * n + c + n] = -v;
            }
        h = std::move(next);
    }
    return h;
}

inline Matrix scaled_sign_matrix(const std::vector<int>& h, int d) {
    Matrix w(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d * d; ++i) w.data()[static_cast<std::size_t>(i)] = s * h[static_cast<std::size_t>(i)];
    return w;
}

inline Matrix diagonal_phase_S(double phi1, double phi2) {
    Matrix s(2, 2);
    s(0, 0) = std::polar(1.0, phi1);
    s(1, 1) = std::polar(1.0, phi2);
    return s;
}

/// Key identifying W up to a global phase: the first entry with modulus
/// above 1e-12 is rotated onto the positive real axis, then entries are
/// rounded to 1e-8.
inline std::vector<long long> global_phase_key(const Matrix& w) {
    Complex rot{1.0, 0.0};
    for (const auto& z : w.data())
        if (std::abs(z) > 1e-12) {
            rot = std::conj(z) / std::abs(z);
            break;
        }
    std::vector<long long> key;
    key.reserve(2 * w.data().size());
    for (const auto& z : w.data()) {
        const Complex q = z * rot;
        key.push_back(std::llround(q.real() * 1e8));
        key.push_back(std::llround(q.imag() * 1e8));
    }
    return key;
}

namespace detail {

template <class Sink>
class CandidateFilter {
public:
    CandidateFilter(const SearchConfig& cfg, Sink& sink)
        : cfg_(cfg), tol_(cfg.tol), sink_(sink), first_(complete_basis(cfg.d)),
          S_(diagonal_phase_S(cfg.phi1, cfg.phi2)) {}

    [[nodiscard]] bool done() const { return summary_.emitted >= cfg_.limit; }

    void offer(Matrix w, const std::string& provenance) {
        if (!is_unitary(w, tol_)) return;
        ++summary_.admissible;
        MubPairSpec spec{cfg_.d, S_, std::move(w)};
        const auto report = verify_pair_direct(first_, build_second_basis(spec, tol_), tol_);
        if (!report.passed) return;
        ++summary_.verified;
        if (!seen_.insert(global_phase_key(spec.W)).second) return;
        if (done()) return;
        ++summary_.emitted;
        sink_(Candidate{std::move(spec), provenance, true});
    }

    void note_examined() { ++summary_.examined; }
    [[nodiscard]] const SearchSummary& result() const { return summary_; }

private:
    const SearchConfig& cfg_;
    Tolerance tol_;
    Sink& sink_;
    BasisSet first_;
    Matrix S_;
    SearchSummary summary_;
    std::set<std::vector<long long>> seen_;
};

inline void check_common(const SearchConfig& cfg, SearchMode expected) {
    if (cfg.mode != expected) {
        throw SearchError("search mode mismatch: config says " + std::string(to_string(cfg.mode)) +
                          ", operation is " + std::string(to_string(expected)));
    }
    if (cfg.d < 3) throw SearchError("search needs d >= 3, got " + std::to_string(cfg.d));
    if (cfg.d > cfg.max_d) {
        throw SearchError("d = " + std::to_string(cfg.d) + " exceeds the configured cap " +
                          std::to_string(cfg.max_d));
    }
    if (!(cfg.tol > 0.0)) throw SearchError("tolerance must be positive");
}

}  // namespace detail

/// All 2^(d^2) sign matrices in ascending mask order, keeping Hadamard ones.
template <std::invocable<const Candidate&> Sink>
SearchSummary enumerate_sign_matrices(const SearchConfig& cfg, Sink&& sink) {
    detail::check_common(cfg, SearchMode::exhaustive_signs);
    if (cfg.d > kExhaustiveMaxD) {
        throw SearchError("exhaustive_signs is limited to d <= 4 (2^(d^2) patterns), got d = " +
                          std::to_string(cfg.d));
    }
    detail::CandidateFilter filter(cfg, sink);
    const int n = cfg.d * cfg.d;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < total && !filter.done(); ++mask) {
        filter.note_examined();
        const auto h = sign_pattern(mask, cfg.d);
        if (!is_hadamard(h, cfg.d)) continue;
        std::ostringstream hex;
        hex << "exhaustive_signs mask=0x" << std::hex << std::setw((n + 3) / 4) << std::setfill('0') << mask;
        filter.offer(scaled_sign_matrix(h, cfg.d), hex.str());
    }
    return filter.result();
}

/// Random row/column permutations and negations of the Sylvester Hadamard
/// matrix, drawn from an mt19937_64 seeded with cfg.seed.
template <std::invocable<const Candidate&> Sink>
SearchSummary sylvester_orbit(const SearchConfig& cfg, Sink&& sink) {
    detail::check_common(cfg, SearchMode::sylvester_orbit);
    const int d = cfg.d;
    const auto base = sylvester_hadamard(d);
    detail::CandidateFilter filter(cfg, sink);
    std::mt19937_64 rng(cfg.seed);

    auto shuffled = [&] {
        std::vector<int> p(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) p[i] = i;
        for (int i = d - 1; i > 0; --i) std::swap(p[i], p[bounded_draw(rng, static_cast<std::uint64_t>(i + 1))]);
        return p;
    };
    auto signs = [&] {
        std::vector<int> s(static_cast<std::size_t>(d));
        for (auto& v : s) v = bounded_draw(rng, 2) ? -1 : 1;
        return s;
    };

    for (std::size_t sample = 0; sample < cfg.samples && !filter.done(); ++sample) {
        filter.note_examined();
        const auto rp = shuffled();
        const auto cp = shuffled();
        const auto rs = signs();
        const auto cs = signs();
        std::vector<int> h(static_cast<std::size_t>(d * d));
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) h[r * d + c] = rs[r] * cs[c] * base[rp[r] * d + cp[c]];
        filter.offer(scaled_sign_matrix(h, d),
                     "sylvester_orbit seed=" + std::to_string(cfg.seed) + " sample=" + std::to_string(sample));
    }
    return filter.result();
}

// ---------------------------------------------------------------------------
// Phase constraint propagation

/// Graph on the d*d theta entries: each phase family gives an edge x -> y
/// with theta[x] - theta[y] = pi/2 - (phi1 - phi2) (mod pi).
class PhaseGraph {
public:
    explicit PhaseGraph(int d) : d_(d), adj_(static_cast<std::size_t>(d * d)) {
        for (const auto& c : corollary_constraints(d)) {
            const int x = c.x[0] * d + c.x[1];
            const int y = c.y[0] * d + c.y[1];
            adj_[x].push_back({y, -1});
            if (x != y) adj_[y].push_back({x, +1});
        }
        // Component roots are the first unvisited entries in row-major order.
        std::vector<bool> seen(adj_.size(), false);
        for (int v = 0; v < d * d; ++v) {
            if (seen[v]) continue;
            roots_.push_back(v);
            std::vector<int> stack{v};
            seen[v] = true;
            while (!stack.empty()) {
                const int u = stack.back();
                stack.pop_back();
                for (const auto& e : adj_[u])
                    if (!seen[e.to]) {
                        seen[e.to] = true;
                        stack.push_back(e.to);
                    }
            }
        }
    }

    [[nodiscard]] int d() const noexcept { return d_; }
    /// Root entries (row-major index), one per connected component.
    [[nodiscard]] const std::vector<int>& roots() const noexcept { return roots_; }
    [[nodiscard]] std::size_t derived_count() const noexcept { return adj_.size() - roots_.size(); }

    /// Assigns theta from the given root phases; each derived entry takes
    /// its forced value plus pi * bit, with bits consumed in visit order.
    /// Returns nullopt when a cycle closes inconsistently.
    template <class BitSource>
    std::optional<std::vector<double>> propagate(double phase_offset, const std::vector<double>& root_phases,
                                                 BitSource&& next_bit) const {
        if (root_phases.size() != roots_.size()) {
            throw SearchError("expected " + std::to_string(roots_.size()) + " root phases, got " +
                              std::to_string(root_phases.size()));
        }
        constexpr double kCycleTol = 1e-9;
        std::vector<std::optional<double>> theta(adj_.size());
        for (std::size_t r = 0; r < roots_.size(); ++r) {
            std::vector<int> queue{roots_[r]};
            theta[roots_[r]] = root_phases[r];
            for (std::size_t head = 0; head < queue.size(); ++head) {
                const int u = queue[head];
                for (const auto& e : adj_[u]) {
                    // theta[to] = theta[u] + sign * offset (mod pi)
                    const double forced = *theta[u] + e.sign * phase_offset;
                    if (!theta[e.to]) {
                        theta[e.to] = forced + (next_bit() ? kPi : 0.0);
                        queue.push_back(e.to);
                    } else {
                        double res = reduce_mod_pi(*theta[e.to] - forced);
                        res = std::min(res, kPi - res);
                        if (res > kCycleTol) return std::nullopt;
                    }
                }
            }
        }
        std::vector<double> out(adj_.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = *theta[i];
        return out;
    }

private:
    struct Edge {
        int to;
        int sign;
    };
    int d_;
    std::vector<std::vector<Edge>> adj_;
    std::vector<int> roots_;
};

inline Matrix phase_matrix(const std::vector<double>& theta, int d) {
    Matrix w(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    const double r = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < theta.size(); ++i) w.data()[i] = std::polar(r, theta[i]);
    return w;
}

inline constexpr std::uint64_t kMaxEnumeratedBits = 20;
inline constexpr std::uint64_t kMaxSweptBits = 12;
inline constexpr std::array<std::uint64_t, 5> kRootAlphabets{2, 3, 4, 6, 12};

/// Propagates the phase constraints from root phases (sampled roots of unity
/// of order dividing 12, or fixed by cfg.roots) and keeps unitary, verified W. With fixed
/// roots and at most 2^20 sign choices, every choice is enumerated in order.
template <std::invocable<const Candidate&> Sink>
SearchSummary random_phase_search(const SearchConfig& cfg, Sink&& sink) {
    detail::check_common(cfg, SearchMode::random_phases);
    const int d = cfg.d;
    const PhaseGraph graph(d);
    const double offset = kPi / 2.0 - (cfg.phi1 - cfg.phi2);
    detail::CandidateFilter filter(cfg, sink);
    std::mt19937_64 rng(cfg.seed);

    auto try_theta = [&](const std::optional<std::vector<double>>& theta, const std::string& prov) {
        filter.note_examined();
        if (theta) filter.offer(phase_matrix(*theta, d), prov);
    };

    const std::size_t bits = graph.derived_count();
    if (!cfg.roots.empty()) {
        if (bits <= kMaxEnumeratedBits) {
            const std::uint64_t total = std::uint64_t{1} << bits;
            for (std::uint64_t mask = 0; mask < total && !filter.done(); ++mask) {
                std::size_t i = 0;
                auto theta = graph.propagate(offset, cfg.roots, [&] { return (mask >> i++) & 1U; });
                try_theta(theta, "random_phases fixed-roots signs=" + std::to_string(mask));
            }
            return filter.result();
        }
        for (std::size_t sample = 0; sample < cfg.samples && !filter.done(); ++sample) {
            auto theta = graph.propagate(offset, cfg.roots, [&] { return bounded_draw(rng, 2) == 1; });
            try_theta(theta, "random_phases fixed-roots seed=" + std::to_string(cfg.seed) +
                                 " sample=" + std::to_string(sample));
        }
        return filter.result();
    }

    // Each draw fixes the roots; with few derived entries every sign choice is
    // then tried, otherwise one random choice. cfg.samples caps propagations.
    std::size_t used = 0;
    for (std::size_t draw = 0; used < cfg.samples && !filter.done(); ++draw) {
        // Roots are q-th roots of unity for q drawn from the divisors of 12, so
        // coarse alphabets (real, cube-root) are hit often. A common shift of
        // every root only changes W by a global phase, so the first is 0.
        const std::uint64_t q = kRootAlphabets[bounded_draw(rng, kRootAlphabets.size())];
        std::vector<double> roots(graph.roots().size());
        for (std::size_t i = 1; i < roots.size(); ++i)
            roots[i] = 2.0 * kPi * static_cast<double>(bounded_draw(rng, q)) / static_cast<double>(q);
        const std::string prov = "random_phases seed=" + std::to_string(cfg.seed) + " draw=" + std::to_string(draw);
        if (bits <= kMaxSweptBits) {
            const std::uint64_t total = std::uint64_t{1} << bits;
            for (std::uint64_t mask = 0; mask < total && used < cfg.samples && !filter.done(); ++mask, ++used) {
                std::size_t i = 0;
                auto theta = graph.propagate(offset, roots, [&] { return (mask >> i++) & 1U; });
                try_theta(theta, prov + " signs=" + std::to_string(mask));
            }
        } else {
            ++used;
            try_theta(graph.propagate(offset, roots, [&] { return bounded_draw(rng, 2) == 1; }), prov);
        }
    }
    return filter.result();
}

/// Dispatches on cfg.mode.
template <std::invocable<const Candidate&> Sink>
SearchSummary run_search(const SearchConfig& cfg, Sink&& sink) {
    switch (cfg.mode) {
        case SearchMode::exhaustive_signs: return enumerate_sign_matrices(cfg, sink);
        case SearchMode::sylvester_orbit: return sylvester_orbit(cfg, sink);
        case SearchMode::random_phases: return random_phase_search(cfg, sink);
    }
    throw SearchError("unknown search mode");
}

inline std::vector<Candidate> collect(const SearchConfig& cfg, SearchSummary* summary = nullptr) {
    std::vector<Candidate> out;
    const auto s = run_search(cfg, [&](const Candidate& c) { out.push_back(c); });
    if (summary) *summary = s;
    return out;
}

}  // namespace umebmub
