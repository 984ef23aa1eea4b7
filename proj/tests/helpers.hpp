#pragma once

#include <vector>

#include "doctest.h"
#include "gaq/error.hpp"
#include "gaq/graph.hpp"
#include "oracles.hpp"

namespace testing {

inline gaq::Graph make_graph(gaq::Index n, const std::vector<oracle::RawEdge>& raw) {
    std::vector<gaq::Edge> edges;
    for (const auto& e : raw) edges.push_back({e.a, e.b, e.w});
    return gaq::build_graph(n, edges);
}

inline gaq::Graph path_graph(gaq::Index n) { return make_graph(n, oracle::path(n)); }

/// Expects the callable to throw gaq::Error with the given code.
template <typename F>
void expect_error(F&& f, gaq::ErrorCode code) {
    bool thrown = false;
    try {
        f();
    } catch (const gaq::Error& e) {
        thrown = true;
        CHECK_MESSAGE(e.code() == code, "got ", gaq::to_string(e.code()), ": ", e.what());
    }
    CHECK_MESSAGE(thrown, "expected ", gaq::to_string(code));
}

/// Frobenius distance between the orthogonal projectors onto span(a), span(b).
inline double projector_distance(const gaq::Matrix& a, const gaq::Matrix& b) {
    return (a * a.transpose() - b * b.transpose()).norm();
}

}  // namespace testing
