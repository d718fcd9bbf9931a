#pragma once

// Atomic decisions and the standard game builders on top of them: a single
// agent choosing from Y after observing X, judged by a selection function;
// the observation-passthrough variant; and the n-stage sequential game in
// which every stage observes all earlier moves.

#include <string>
#include <vector>

#include "og/game.hpp"
#include "og/selection.hpp"

namespace og {

// One strategy slot with Sigma = X -> Y; play sigma(x); trivial coutility;
// (sigma, sigma') in B(x, k) iff sigma'(x) is selected by delta against k.
inline OpenGame decision(const SetPtr& obs, const SetPtr& moves, SelectionFunction sel,
                         std::string id = "d") {
    if (!sel.choices) sel.choices = moves;
    if (!sets_equal(sel.choices, moves))
        throw OutcomeTypeMismatch("selection " + sel.name + " chooses from " + sel.choices->name() +
                                  ", not " + moves->name());
    if (!sel.outcome_known())
        throw Error("decision " + id + ": selection " + sel.name + " has no outcome set");
    auto n = std::make_shared<GameNode>();
    n->kind = GameNode::Kind::Decision;
    n->dom = Boundary(obs, FiniteSet::unit());
    n->cod = Boundary(moves, sel.outcome);
    n->slot_count = 1;
    n->sel = std::move(sel);
    n->base_id = std::move(id);
    return OpenGame(std::move(n));
}

inline OpenGame maximizing_decision(const SetPtr& obs, const SetPtr& moves, const SetPtr& outcome,
                                    std::string id = "d") {
    return decision(obs, moves, argmax_selection(moves, outcome), std::move(id));
}

// Decision that also forwards its observation: (X,1) -> (X x Y, R).
// Built from the algebra: (id tensor D) after copy.
inline OpenGame passthrough_decision(const SetPtr& obs, const SetPtr& moves, const SetPtr& outcome,
                                     std::string id = "d") {
    OpenGame d = maximizing_decision(obs, moves, outcome, std::move(id));
    return compose(copy_game(obs), tensor(identity(Boundary(obs, FiniteSet::unit())), d));
}

// Monoidal product of one maximizing decision per player, each choosing
// from its own set with a scalar utility line: (1,1) -> (prod X_i, U^n).
inline OpenGame tensor_of_decisions(const std::vector<SetPtr>& choices, const SetPtr& utility) {
    if (choices.empty()) return identity(Boundary::unit());
    OpenGame g = maximizing_decision(FiniteSet::unit(), choices[0], utility, "d1");
    for (size_t i = 1; i < choices.size(); ++i)
        g = tensor(g, maximizing_decision(FiniteSet::unit(), choices[i], utility,
                                          "d" + std::to_string(i + 1)));
    return g;
}

// n-stage sequential game, built recursively: stage i + 1 observes the
// product of all earlier moves (fanned out by a copy), chooses from
// X_{i+1}, and its utility line joins the existing ones:
//
//   G_0     = id
//   G_{i+1} = (id tensor D_{prod X_j, X_{i+1}}) after (copy tensor id) after G_i
//
// The result is (1,1) -> (prod X_i, U^n) with one slot per stage whose
// observation set is the product of the earlier stages' move sets.
inline OpenGame sequential_game(const std::vector<SetPtr>& choices, const SetPtr& utility) {
    OpenGame g = identity(Boundary::unit());
    SetPtr moves_so_far = FiniteSet::unit();  // prod_{j <= i} X_j
    SetPtr utils_so_far = FiniteSet::unit();  // U^i
    for (size_t i = 0; i < choices.size(); ++i) {
        OpenGame d = maximizing_decision(moves_so_far, choices[i], utility, "d" + std::to_string(i + 1));
        OpenGame fan = tensor(copy_game(moves_so_far), identity(Boundary(FiniteSet::unit(), utils_so_far)));
        OpenGame step = tensor(identity(Boundary(moves_so_far, utils_so_far)), d);
        g = compose(compose(g, fan), step);
        moves_so_far = tensor_set(moves_so_far, choices[i]);
        utils_so_far = tensor_set(utils_so_far, utility);
    }
    return g;
}

} // namespace og
