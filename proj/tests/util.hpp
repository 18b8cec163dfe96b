#pragma once

// Shared fixture helpers for the test suites.

#include <vector>

#include "npplab/model.hpp"

namespace npplab::testutil {

// Integer-valued instance: q_i = v_i, scale 2^(-B).  With B = 20 the
// threshold at E = 10 is 2^10, far below unit scale.
inline Instance ints(const std::vector<long long>& v, int scale_bits = 20) {
    Instance g;
    g.n = static_cast<int>(v.size());
    g.scale_bits = scale_bits;
    for (long long q : v) g.values.push_back(Wide(q));
    return g;
}

// Unit-valued instance: q_i = v_i * 2^B, so discrepancies are multiples of
// 2^B.  With B = 20 and E = 10 the threshold 2^10 < 2^20 admits only exact
// integer zero-sums ("threshold below one unit").
inline Instance units(const std::vector<long long>& v, int scale_bits = 20) {
    Instance g;
    g.n = static_cast<int>(v.size());
    g.scale_bits = scale_bits;
    for (long long q : v) g.values.push_back(Wide(q) << scale_bits);
    return g;
}

inline SignVector sv(const std::string& s) { return SignVector::from_string(s); }

}  // namespace npplab::testutil
