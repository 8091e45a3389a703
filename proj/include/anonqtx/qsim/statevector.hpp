#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "anonqtx/rng.hpp"

namespace anonqtx::qsim {

using cplx = std::complex<double>;

// Exact-math tolerance used throughout the simulator.
inline constexpr double kTol = 1e-9;

// Largest register the simulator accepts unless a caller widens the cap.
inline constexpr int kDefaultMaxQubits = 14;

enum class DualOutcome : std::uint8_t { Plus = 0, Minus = 1 };

inline int minus_bit(DualOutcome o) { return o == DualOutcome::Minus ? 1 : 0; }
inline char dual_char(DualOutcome o) { return o == DualOutcome::Minus ? '-' : '+'; }
inline DualOutcome dual_flip(DualOutcome o) {
    return o == DualOutcome::Plus ? DualOutcome::Minus : DualOutcome::Plus;
}

enum class Pauli : std::uint8_t { X, Z };

// Bell measurement outcome; (bit_x, bit_z) = (0,0) labels |Phi+>.
struct BellOutcome {
    std::uint8_t bit_x = 0;
    std::uint8_t bit_z = 0;
    bool operator==(const BellOutcome&) const = default;
};

enum class BellLabel : std::uint8_t { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };

inline BellLabel bell_label(BellOutcome o) {
    if (o.bit_x == 0) return o.bit_z == 0 ? BellLabel::PhiPlus : BellLabel::PhiMinus;
    return o.bit_z == 0 ? BellLabel::PsiPlus : BellLabel::PsiMinus;
}

inline BellOutcome bell_outcome(BellLabel l) {
    switch (l) {
        case BellLabel::PhiPlus: return {0, 0};
        case BellLabel::PhiMinus: return {0, 1};
        case BellLabel::PsiPlus: return {1, 0};
        case BellLabel::PsiMinus: return {1, 1};
    }
    return {0, 0};
}

inline const char* bell_name(BellLabel l) {
    switch (l) {
        case BellLabel::PhiPlus: return "phi+";
        case BellLabel::PhiMinus: return "phi-";
        case BellLabel::PsiPlus: return "psi+";
        case BellLabel::PsiMinus: return "psi-";
    }
    return "?";
}

// Pure state of a small qubit register.
//
// Indexing convention (fixed project-wide): qubit k corresponds to bit k of
// the basis-state index, bit 0 least significant. Removing qubit k (after a
// measurement) shifts every qubit above k down by one; qubits below k keep
// their index. A fully measured register is represented with num_qubits 0
// and a single unit amplitude.
class Statevector {
public:
    explicit Statevector(int num_qubits, int max_qubits = kDefaultMaxQubits)
        : num_qubits_(check_size(num_qubits, max_qubits)),
          amp_(std::size_t{1} << num_qubits, cplx{0.0, 0.0}) {
        amp_[0] = 1.0;
    }

    Statevector(int num_qubits, std::vector<cplx> amplitudes)
        : num_qubits_(num_qubits), amp_(std::move(amplitudes)) {
        if (num_qubits_ < 0 || amp_.size() != (std::size_t{1} << num_qubits_))
            throw std::invalid_argument("statevector: amplitude count does not match qubit count");
    }

    static Statevector empty() { return Statevector(0, std::vector<cplx>{cplx{1.0, 0.0}}); }

    // |Phi> = (|0...0> + |1...1>)/sqrt(2)
    static Statevector ghz(int n, int max_qubits = kDefaultMaxQubits) {
        Statevector s(n, max_qubits);
        const double r = 1.0 / std::sqrt(2.0);
        s.amp_[0] = r;
        s.amp_[(std::size_t{1} << n) - 1] = r;
        return s;
    }

    static Statevector basis_state(int n, std::uint64_t index, int max_qubits = kDefaultMaxQubits) {
        Statevector s(n, max_qubits);
        if (index >= (std::uint64_t{1} << n))
            throw std::invalid_argument("basis_state: index out of range");
        s.amp_[0] = 0.0;
        s.amp_[index] = 1.0;
        return s;
    }

    static Statevector single_qubit(cplx a0, cplx a1) {
        double n = std::sqrt(std::norm(a0) + std::norm(a1));
        if (n < kTol) throw std::invalid_argument("single_qubit: zero vector");
        return Statevector(1, {a0 / n, a1 / n});
    }

    // |+> or |->
    static Statevector dual_state(DualOutcome o) {
        const double r = 1.0 / std::sqrt(2.0);
        return Statevector(1, {r, o == DualOutcome::Plus ? r : -r});
    }

    static Statevector bell(BellLabel l) {
        const double r = 1.0 / std::sqrt(2.0);
        switch (l) {
            case BellLabel::PhiPlus: return Statevector(2, {r, 0, 0, r});
            case BellLabel::PhiMinus: return Statevector(2, {r, 0, 0, -r});
            case BellLabel::PsiPlus: return Statevector(2, {0, r, r, 0});
            case BellLabel::PsiMinus: return Statevector(2, {0, r, -r, 0});
        }
        throw std::invalid_argument("bell: bad label");
    }

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amp_.size(); }
    const std::vector<cplx>& amplitudes() const { return amp_; }
    cplx amplitude(std::size_t i) const { return amp_.at(i); }

    double norm_sq() const {
        double s = 0.0;
        for (const cplx& a : amp_) s += std::norm(a);
        return s;
    }

private:
    static int check_size(int n, int max_qubits) {
        if (n < 1 || n > max_qubits)
            throw std::invalid_argument("statevector: qubit count " + std::to_string(n) +
                                        " outside [1," + std::to_string(max_qubits) + "]");
        return n;
    }

    int num_qubits_;
    std::vector<cplx> amp_;
};

namespace detail {

inline void check_qubit(const Statevector& s, int q, const char* who) {
    if (q < 0 || q >= s.num_qubits())
        throw std::invalid_argument(std::string(who) + ": qubit index out of range");
}

// Split an (n-1)-qubit index back into the two n-qubit indices that differ
// in qubit k.
inline std::pair<std::size_t, std::size_t> expand_index(std::size_t i, int k) {
    const std::size_t low = i & ((std::size_t{1} << k) - 1);
    const std::size_t high = (i >> k) << (k + 1);
    const std::size_t i0 = high | low;
    return {i0, i0 | (std::size_t{1} << k)};
}

inline Statevector normalized_or_throw(int n, std::vector<cplx> amp, double prob,
                                       const char* who) {
    if (prob < 1e-300)
        throw std::logic_error(std::string(who) + ": zero-probability branch");
    const double scale = 1.0 / std::sqrt(prob);
    for (cplx& a : amp) a *= scale;
    return Statevector(n, std::move(amp));
}

}  // namespace detail

// a (x) b: qubits of a keep their indices, qubit j of b becomes a.n + j.
inline Statevector tensor(const Statevector& a, const Statevector& b) {
    const int n = a.num_qubits() + b.num_qubits();
    std::vector<cplx> amp(std::size_t{1} << n);
    for (std::size_t jb = 0; jb < b.dim(); ++jb)
        for (std::size_t ja = 0; ja < a.dim(); ++ja)
            amp[(jb << a.num_qubits()) | ja] = a.amplitudes()[ja] * b.amplitudes()[jb];
    return Statevector(n, std::move(amp));
}

inline Statevector apply_pauli(const Statevector& s, int qubit, Pauli which) {
    detail::check_qubit(s, qubit, "apply_pauli");
    std::vector<cplx> amp = s.amplitudes();
    const std::size_t bit = std::size_t{1} << qubit;
    if (which == Pauli::X) {
        for (std::size_t i = 0; i < amp.size(); ++i)
            if (!(i & bit)) std::swap(amp[i], amp[i | bit]);
    } else {
        for (std::size_t i = 0; i < amp.size(); ++i)
            if (i & bit) amp[i] = -amp[i];
    }
    return Statevector(s.num_qubits(), std::move(amp));
}

struct Projection {
    double probability = 0.0;
    Statevector state;  // measured qubit(s) removed
};

namespace detail {

// Unnormalized amplitudes after projecting qubit onto (|0> + sign|1>)/sqrt2.
inline std::pair<std::vector<cplx>, double> dual_branch(const Statevector& s, int qubit,
                                                        double sign) {
    const double r = 1.0 / std::sqrt(2.0);
    const std::size_t half = s.dim() >> 1;
    std::vector<cplx> amp(half);
    double prob = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
        auto [i0, i1] = expand_index(i, qubit);
        amp[i] = r * (s.amplitudes()[i0] + sign * s.amplitudes()[i1]);
        prob += std::norm(amp[i]);
    }
    return {std::move(amp), prob};
}

}  // namespace detail

// Project qubit onto <+| or <-| and drop it from the register.
inline Projection project_dual(const Statevector& s, int qubit, DualOutcome o) {
    detail::check_qubit(s, qubit, "project_dual");
    auto [amp, prob] =
        detail::dual_branch(s, qubit, o == DualOutcome::Plus ? 1.0 : -1.0);
    if (s.num_qubits() == 1) return {prob, Statevector::empty()};
    return {prob, detail::normalized_or_throw(s.num_qubits() - 1, std::move(amp), prob,
                                              "project_dual")};
}

inline double dual_plus_probability(const Statevector& s, int qubit) {
    detail::check_qubit(s, qubit, "dual_plus_probability");
    return detail::dual_branch(s, qubit, 1.0).second;
}

// Born sample: outcome Plus iff u < P(plus), one uniform draw.
inline std::pair<DualOutcome, Statevector> measure_dual(const Statevector& s, int qubit,
                                                        RandomStream& rng) {
    const double p_plus = dual_plus_probability(s, qubit);
    const DualOutcome o = rng.uniform() < p_plus ? DualOutcome::Plus : DualOutcome::Minus;
    return {o, project_dual(s, qubit, o).state};
}

inline Projection project_computational(const Statevector& s, int qubit, int bit) {
    detail::check_qubit(s, qubit, "project_computational");
    const std::size_t half = s.dim() >> 1;
    std::vector<cplx> amp(half);
    double prob = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
        auto [i0, i1] = detail::expand_index(i, qubit);
        amp[i] = s.amplitudes()[bit ? i1 : i0];
        prob += std::norm(amp[i]);
    }
    if (s.num_qubits() == 1) {
        prob = std::norm(s.amplitudes()[bit ? 1 : 0]);
        return {prob, Statevector::empty()};
    }
    return {prob, detail::normalized_or_throw(s.num_qubits() - 1, std::move(amp), prob,
                                              "project_computational")};
}

inline std::pair<int, Statevector> measure_computational(const Statevector& s, int qubit,
                                                         RandomStream& rng) {
    detail::check_qubit(s, qubit, "measure_computational");
    double p0 = 0.0;
    const std::size_t bit = std::size_t{1} << qubit;
    for (std::size_t i = 0; i < s.dim(); ++i)
        if (!(i & bit)) p0 += std::norm(s.amplitudes()[i]);
    const int outcome = rng.uniform() < p0 ? 0 : 1;
    return {outcome, project_computational(s, qubit, outcome).state};
}

namespace detail {

// Unnormalized amplitudes of the rest register after projecting (q1,q2) onto
// |B(bx,bz)> = (1/sqrt2) sum_a (-1)^(bz a) |a>_q1 |a xor bx>_q2.
inline std::pair<std::vector<cplx>, double> bell_branch(const Statevector& s, int q1, int q2,
                                                        BellOutcome o) {
    const double r = 1.0 / std::sqrt(2.0);
    const int n = s.num_qubits();
    const std::size_t rest_dim = std::size_t{1} << (n - 2);
    const int lo = q1 < q2 ? q1 : q2;
    const int hi = q1 < q2 ? q2 : q1;
    auto full_index = [&](std::size_t rest, int a, int b) {
        auto [i0, i1] = expand_index(rest, lo);
        std::size_t with_lo = ((q1 == lo ? a : b) != 0) ? i1 : i0;
        auto [j0, j1] = expand_index(with_lo, hi);
        return ((q1 == hi ? a : b) != 0) ? j1 : j0;
    };
    std::vector<cplx> amp(rest_dim);
    double prob = 0.0;
    for (std::size_t rest = 0; rest < rest_dim; ++rest) {
        cplx c = r * (s.amplitudes()[full_index(rest, 0, o.bit_x)] +
                      (o.bit_z ? -1.0 : 1.0) * s.amplitudes()[full_index(rest, 1, 1 ^ o.bit_x)]);
        amp[rest] = c;
        prob += std::norm(c);
    }
    return {std::move(amp), prob};
}

inline void check_bell_args(const Statevector& s, int q1, int q2, const char* who) {
    check_qubit(s, q1, who);
    check_qubit(s, q2, who);
    if (q1 == q2) throw std::invalid_argument(std::string(who) + ": qubits must differ");
}

}  // namespace detail

inline Projection project_bell(const Statevector& s, int q1, int q2, BellOutcome o) {
    detail::check_bell_args(s, q1, q2, "project_bell");
    auto [amp, prob] = detail::bell_branch(s, q1, q2, o);
    if (s.num_qubits() == 2) return {prob, Statevector::empty()};
    return {prob,
            detail::normalized_or_throw(s.num_qubits() - 2, std::move(amp), prob, "project_bell")};
}

inline double bell_probability(const Statevector& s, int q1, int q2, BellOutcome o) {
    detail::check_bell_args(s, q1, q2, "bell_probability");
    return detail::bell_branch(s, q1, q2, o).second;
}

// Both qubits removed; outcome sampled in label order Phi+, Phi-, Psi+, Psi-
// with one uniform draw against the cumulative distribution.
inline std::pair<BellOutcome, Statevector> bell_measure(const Statevector& s, int q1, int q2,
                                                        RandomStream& rng) {
    detail::check_bell_args(s, q1, q2, "bell_measure");
    static constexpr BellLabel order[4] = {BellLabel::PhiPlus, BellLabel::PhiMinus,
                                           BellLabel::PsiPlus, BellLabel::PsiMinus};
    double probs[4];
    double total = 0.0;
    for (int i = 0; i < 4; ++i) {
        probs[i] = detail::bell_branch(s, q1, q2, bell_outcome(order[i])).second;
        total += probs[i];
    }
    const double u = rng.uniform() * total;
    int pick = 3;
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
        acc += probs[i];
        if (u < acc) {
            pick = i;
            break;
        }
    }
    const BellOutcome o = bell_outcome(order[pick]);
    return {o, project_bell(s, q1, q2, o).state};
}

inline cplx inner_product(const Statevector& a, const Statevector& b) {
    if (a.num_qubits() != b.num_qubits())
        throw std::invalid_argument("inner_product: dimension mismatch");
    cplx s{0, 0};
    for (std::size_t i = 0; i < a.dim(); ++i)
        s += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
    return s;
}

// |<a|b>|^2 — global-phase insensitive by construction.
inline double fidelity(const Statevector& a, const Statevector& b) {
    return std::norm(inner_product(a, b));
}

}  // namespace anonqtx::qsim
