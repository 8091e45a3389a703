#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "anonqtx/qsim/statevector.hpp"

namespace anonqtx::qsim {

using QubitHandle = std::uint32_t;
inline constexpr QubitHandle kNullHandle = 0xffffffffu;

using OwnerId = std::uint32_t;

// Owns every live register of a run and maps stable qubit handles to
// (register, position). Measurements remove qubits; a register whose last
// qubit is measured is dropped. Each handle has exactly one owner at any
// step, which is what makes no-cloning checkable.
class RegisterPool {
public:
    // One handle per qubit, position-ordered; all owned by `creator`.
    std::vector<QubitHandle> create_register(Statevector state, OwnerId creator) {
        if (state.num_qubits() < 1)
            throw std::invalid_argument("create_register: empty state");
        const int n = state.num_qubits();
        const std::uint32_t reg = static_cast<std::uint32_t>(regs_.size());
        std::vector<QubitHandle> handles(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            handles[static_cast<std::size_t>(k)] = static_cast<QubitHandle>(recs_.size());
            recs_.push_back(Rec{reg, static_cast<std::uint16_t>(k), creator, true});
        }
        regs_.push_back(Reg{std::move(state), handles, true});
        return handles;
    }

    bool alive(QubitHandle h) const { return h < recs_.size() && recs_[h].alive; }

    OwnerId owner(QubitHandle h) const { return rec(h).owner; }

    void set_owner(QubitHandle h, OwnerId who) { rec(h).owner = who; }

    // God view: the state of the register holding h, plus h's position.
    const Statevector& register_state(QubitHandle h) const { return regs_[rec(h).reg].state; }
    int position(QubitHandle h) const { return rec(h).pos; }

    // God view of a two-qubit register as (h1 -> qubit 0, h2 -> qubit 1).
    // Requires the two handles to be the only qubits of one register.
    Statevector pair_state(QubitHandle h1, QubitHandle h2) const {
        const Rec& r1 = rec(h1);
        const Rec& r2 = rec(h2);
        if (r1.reg != r2.reg || regs_[r1.reg].handles.size() != 2)
            throw std::logic_error("pair_state: handles are not an isolated pair");
        const Statevector& s = regs_[r1.reg].state;
        if (r1.pos == 0) return s;
        std::vector<cplx> amp = {s.amplitudes()[0], s.amplitudes()[2], s.amplitudes()[1],
                                 s.amplitudes()[3]};
        return Statevector(2, std::move(amp));
    }

    DualOutcome measure_dual(QubitHandle h, RandomStream& rng) {
        Rec& r = rec(h);
        auto [o, collapsed] = qsim::measure_dual(regs_[r.reg].state, r.pos, rng);
        remove_qubit(r.reg, r.pos, std::move(collapsed));
        return o;
    }

    int measure_computational(QubitHandle h, RandomStream& rng) {
        Rec& r = rec(h);
        auto [bit, collapsed] = qsim::measure_computational(regs_[r.reg].state, r.pos, rng);
        remove_qubit(r.reg, r.pos, std::move(collapsed));
        return bit;
    }

    void apply_pauli(QubitHandle h, Pauli which) {
        Rec& r = rec(h);
        regs_[r.reg].state = qsim::apply_pauli(regs_[r.reg].state, r.pos, which);
    }

    // Merges registers first when the handles live in different ones.
    BellOutcome bell_measure(QubitHandle h1, QubitHandle h2, RandomStream& rng) {
        if (h1 == h2) throw std::invalid_argument("bell_measure: identical handles");
        merge_if_needed(h1, h2);
        Rec& r1 = rec(h1);
        Rec& r2 = rec(h2);
        auto [o, collapsed] = qsim::bell_measure(regs_[r1.reg].state, r1.pos, r2.pos, rng);
        remove_pair(r1.reg, h1, h2, std::move(collapsed));
        return o;
    }

    // Born-samples the Bell label of an isolated pair and collapses the pair
    // register onto that exact Bell state (h1 -> qubit 0 of the label).
    BellLabel classify_pair(QubitHandle h1, QubitHandle h2, RandomStream& rng) {
        Statevector pair = pair_state(h1, h2);
        static constexpr BellLabel order[4] = {BellLabel::PhiPlus, BellLabel::PhiMinus,
                                               BellLabel::PsiPlus, BellLabel::PsiMinus};
        double acc = 0.0;
        const double u = rng.uniform();
        BellLabel picked = BellLabel::PsiMinus;
        double total = 0.0;
        double probs[4];
        for (int i = 0; i < 4; ++i) {
            probs[i] = fidelity(Statevector::bell(order[i]), pair);
            total += probs[i];
        }
        const double target = u * total;
        for (int i = 0; i < 4; ++i) {
            acc += probs[i];
            if (target < acc) {
                picked = order[i];
                break;
            }
        }
        collapse_pair(h1, h2, picked);
        return picked;
    }

    // Force an isolated pair onto an exact Bell state (god-view operation).
    void collapse_pair(QubitHandle h1, QubitHandle h2, BellLabel label) {
        const Rec& r1 = rec(h1);
        const Rec& r2 = rec(h2);
        if (r1.reg != r2.reg || regs_[r1.reg].handles.size() != 2)
            throw std::logic_error("collapse_pair: handles are not an isolated pair");
        Statevector b = Statevector::bell(label);
        if (r1.pos != 0) {
            // swap qubit roles: h1 must sit at label qubit 0
            std::vector<cplx> amp = {b.amplitudes()[0], b.amplitudes()[2], b.amplitudes()[1],
                                     b.amplitudes()[3]};
            b = Statevector(2, std::move(amp));
        }
        regs_[r1.reg].state = std::move(b);
    }

    // Drop an unentangled qubit (its register must contain only it).
    void discard(QubitHandle h) {
        Rec& r = rec(h);
        if (regs_[r.reg].handles.size() != 1)
            throw std::logic_error("discard: qubit is entangled with live qubits");
        regs_[r.reg].live = false;
        regs_[r.reg].handles.clear();
        r.alive = false;
    }

    std::size_t live_register_count() const {
        std::size_t c = 0;
        for (const Reg& r : regs_)
            if (r.live) ++c;
        return c;
    }

private:
    struct Rec {
        std::uint32_t reg = 0;
        std::uint16_t pos = 0;
        OwnerId owner = 0;
        bool alive = false;
    };
    struct Reg {
        Statevector state = Statevector::empty();
        std::vector<QubitHandle> handles;  // handles by position
        bool live = false;
    };

    Rec& rec(QubitHandle h) {
        if (h >= recs_.size() || !recs_[h].alive)
            throw std::logic_error("register pool: dead or unknown qubit handle");
        return recs_[h];
    }
    const Rec& rec(QubitHandle h) const {
        if (h >= recs_.size() || !recs_[h].alive)
            throw std::logic_error("register pool: dead or unknown qubit handle");
        return recs_[h];
    }

    void remove_qubit(std::uint32_t reg, int pos, Statevector collapsed) {
        Reg& r = regs_[reg];
        recs_[r.handles[static_cast<std::size_t>(pos)]].alive = false;
        r.handles.erase(r.handles.begin() + pos);
        for (std::size_t k = static_cast<std::size_t>(pos); k < r.handles.size(); ++k)
            recs_[r.handles[k]].pos = static_cast<std::uint16_t>(k);
        if (r.handles.empty()) {
            r.live = false;
            r.state = Statevector::empty();
        } else {
            r.state = std::move(collapsed);
        }
    }

    void remove_pair(std::uint32_t reg, QubitHandle h1, QubitHandle h2, Statevector collapsed) {
        Reg& r = regs_[reg];
        recs_[h1].alive = false;
        recs_[h2].alive = false;
        std::erase(r.handles, h1);
        std::erase(r.handles, h2);
        for (std::size_t k = 0; k < r.handles.size(); ++k)
            recs_[r.handles[k]].pos = static_cast<std::uint16_t>(k);
        if (r.handles.empty()) {
            r.live = false;
            r.state = Statevector::empty();
        } else {
            r.state = std::move(collapsed);
        }
    }

    void merge_if_needed(QubitHandle h1, QubitHandle h2) {
        Rec& r1 = rec(h1);
        Rec& r2 = rec(h2);
        if (r1.reg == r2.reg) return;
        Reg& a = regs_[r1.reg];
        Reg& b = regs_[r2.reg];
        Statevector merged = tensor(a.state, b.state);
        const int base = a.state.num_qubits();
        for (QubitHandle h : b.handles) {
            recs_[h].reg = r1.reg;
            recs_[h].pos = static_cast<std::uint16_t>(recs_[h].pos + base);
            a.handles.push_back(h);
        }
        a.state = std::move(merged);
        b.live = false;
        b.handles.clear();
        b.state = Statevector::empty();
    }

    std::vector<Reg> regs_;
    std::vector<Rec> recs_;
};

}  // namespace anonqtx::qsim
