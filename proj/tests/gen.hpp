#pragma once

// Every property runs a fixed number of cases from a fixed seed so failures
// replay exactly.

#include <gtest/gtest.h>

#include <string>

#include "rng.hpp"

namespace gen
{

// Runs prop(g) for `cases` draws; the trace names the case that failed.
template <class Prop>
void for_all(std::uint64_t seed, int cases, Prop&& prop)
{
    Gen g(seed);
    for (int k = 0; k < cases; ++k) {
        SCOPED_TRACE("seed " + std::to_string(seed) + " case " + std::to_string(k));
        prop(g);
        if (::testing::Test::HasFatalFailure())
            return;
    }
}

} // namespace gen
