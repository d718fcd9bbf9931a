#pragma once

// Deliberately broken operators, kept so the law suites can prove they have
// teeth. Never use these outside of tests.

#include "og/game.hpp"

namespace og::testing {

// A compose whose best response forgets the left constituent's condition
// (as if the conjunction in the sequential rule lost a clause). Play and
// coplay are untouched, so only the relation-level checks can catch it.
inline OpenGame broken_compose(const OpenGame& g, const OpenGame& h) {
    return og::detail::compose_impl(g, h, /*drop_left=*/true);
}

} // namespace og::testing
