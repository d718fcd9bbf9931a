#pragma once

// Monolithic n-player games evaluated directly from their definitions:
// simultaneous games (each player best-responds against the outcome of
// unilateral deviations) and sequential games (strategies are contingent
// plans, deviations propagate downstream by course-of-values evaluation).
//
// This module is the ground truth the compositional engine is verified
// against. It deliberately shares nothing with game.hpp: only the finite
// core and the selection-function type.

#include <string>
#include <vector>

#include "og/finite.hpp"
#include "og/selection.hpp"

namespace og::classic {

struct SimultaneousGame {
    std::vector<SetPtr> choices;          // X_1 .. X_n
    SetPtr outcome;                       // R
    TableFun q;                           // product(X_i) -> R
    std::vector<SelectionFunction> deltas; // delta_i : (X_i -> R) -> P(X_i)

    size_t players() const { return choices.size(); }

    void validate() const {
        if (deltas.size() != choices.size()) throw Error("one selection function per player required");
        if (!sets_equal(q.dom, product(choices)) || !sets_equal(q.cod, outcome))
            throw Error("outcome table must be product(X_i) -> R");
        for (size_t i = 0; i < deltas.size(); ++i) {
            if (!sets_equal(deltas[i].choices, choices[i]))
                throw Error("player " + std::to_string(i + 1) + ": selection chooses from the wrong set");
            if (!sets_equal(deltas[i].outcome, outcome))
                throw Error("player " + std::to_string(i + 1) + ": selection outcome is not R");
        }
    }
};

// A simultaneous profile is one move per player; its index is mixed-radix
// with player 1 most significant, matching product element order.
inline size_t sim_profile_count(const SimultaneousGame& g) {
    size_t n = 1;
    for (const auto& x : g.choices) n *= x->size();
    return n;
}

inline std::vector<uint32_t> sim_nth_profile(const SimultaneousGame& g, size_t n) {
    std::vector<uint32_t> p(g.players());
    for (size_t i = g.players(); i-- > 0;) {
        p[i] = static_cast<uint32_t>(n % g.choices[i]->size());
        n /= g.choices[i]->size();
    }
    return p;
}

inline size_t moves_index(const std::vector<SetPtr>& choices, std::span<const uint32_t> moves) {
    size_t idx = 0;
    for (size_t i = 0; i < choices.size(); ++i) idx = idx * choices[i]->size() + moves[i];
    return idx;
}

// (sigma, sigma') in B iff for every player i, sigma'_i is selected against
// the continuation x |-> q(sigma with player i playing x).
inline bool sim_best_response(const SimultaneousGame& g, std::span<const uint32_t> sigma,
                              std::span<const uint32_t> sigmap) {
    std::vector<uint32_t> deviated(sigma.begin(), sigma.end());
    for (size_t i = 0; i < g.players(); ++i) {
        std::vector<uint32_t> k(g.choices[i]->size());
        for (size_t x = 0; x < k.size(); ++x) {
            deviated[i] = static_cast<uint32_t>(x);
            k[x] = static_cast<uint32_t>(g.q.tab[moves_index(g.choices, deviated)]);
        }
        deviated[i] = sigma[i];
        if (!g.deltas[i].selects(sigmap[i], k)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

struct SequentialGame {
    std::vector<SetPtr> choices;
    SetPtr outcome;
    TableFun q;
    std::vector<SelectionFunction> deltas;

    size_t players() const { return choices.size(); }

    // Player i's strategy maps the product of earlier move sets to X_i;
    // player 1's observation is the singleton product.
    SetPtr observations(size_t i) const {
        std::vector<SetPtr> prior(choices.begin(), choices.begin() + i);
        return product(prior);
    }
};

// Sequential profiles: one contingent-plan table per player, enumerated in
// odometer order with player 1 most significant.
inline size_t seq_profile_count(const SequentialGame& g, size_t cap = kDefaultFunctionCap) {
    size_t n = 1;
    for (size_t i = 0; i < g.players(); ++i) {
        size_t s = function_count(g.observations(i), g.choices[i], cap);
        if (s != 0 && n > cap / s) throw EnumerationCapExceeded("sequential profile space exceeds cap");
        n *= s;
    }
    return n;
}

inline std::vector<TableFun> seq_nth_profile(const SequentialGame& g, size_t n) {
    std::vector<TableFun> p(g.players());
    for (size_t i = g.players(); i-- > 0;) {
        size_t s = function_count(g.observations(i), g.choices[i]);
        p[i] = nth_function(g.observations(i), g.choices[i], n % s);
        n /= s;
    }
    return p;
}

// Course-of-values evaluation: move_i = sigma_i(move_1 .. move_{i-1}).
inline std::vector<uint32_t> seq_play(const SequentialGame& g, std::span<const TableFun> sigma) {
    std::vector<uint32_t> moves(g.players());
    size_t prefix = 0; // index into product(X_1 .. X_{i-1})
    for (size_t i = 0; i < g.players(); ++i) {
        moves[i] = sigma[i].tab[prefix];
        prefix = prefix * g.choices[i]->size() + moves[i];
    }
    return moves;
}

// Play with player i's move forced to x_i; later players respond through
// their strategies, earlier ones are unaffected.
inline std::vector<uint32_t> unilateral_deviation(const SequentialGame& g, size_t i, size_t x_i,
                                                  std::span<const TableFun> sigma) {
    std::vector<uint32_t> moves(g.players());
    size_t prefix = 0;
    for (size_t j = 0; j < g.players(); ++j) {
        moves[j] = (j == i) ? static_cast<uint32_t>(x_i) : sigma[j].tab[prefix];
        prefix = prefix * g.choices[j]->size() + moves[j];
    }
    return moves;
}

// (sigma, sigma') in B iff for every player i, the move played at stage i
// after substituting sigma'_i is selected against x |-> q(U_i(x, sigma)).
inline bool seq_best_response(const SequentialGame& g, std::span<const TableFun> sigma,
                              std::span<const TableFun> sigmap) {
    std::vector<TableFun> substituted(sigma.begin(), sigma.end());
    for (size_t i = 0; i < g.players(); ++i) {
        std::vector<uint32_t> k(g.choices[i]->size());
        for (size_t x = 0; x < k.size(); ++x)
            k[x] = static_cast<uint32_t>(g.q.tab[moves_index(g.choices, unilateral_deviation(g, i, x, sigma))]);
        substituted[i] = sigmap[i];
        uint32_t target = seq_play(g, substituted)[i];
        substituted[i] = sigma[i];
        if (!g.deltas[i].selects(target, k)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

inline std::vector<std::vector<uint32_t>> equilibria_classic(const SimultaneousGame& g,
                                                             size_t cap = kDefaultFunctionCap) {
    g.validate();
    size_t n = sim_profile_count(g);
    if (n > cap) throw EnumerationCapExceeded("simultaneous profile space exceeds cap");
    std::vector<std::vector<uint32_t>> out;
    for (size_t i = 0; i < n; ++i) {
        auto p = sim_nth_profile(g, i);
        if (sim_best_response(g, p, p)) out.push_back(std::move(p));
    }
    return out;
}

inline std::vector<std::vector<TableFun>> equilibria_classic(const SequentialGame& g,
                                                             size_t cap = kDefaultFunctionCap) {
    size_t n = seq_profile_count(g, cap);
    std::vector<std::vector<TableFun>> out;
    for (size_t i = 0; i < n; ++i) {
        auto p = seq_nth_profile(g, i);
        if (seq_best_response(g, p, p)) out.push_back(std::move(p));
    }
    return out;
}

} // namespace og::classic
