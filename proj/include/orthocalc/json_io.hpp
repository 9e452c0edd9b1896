#pragma once

// JSON conventions: a complex number is a two-element array [re, im]; a
// 2x2 matrix is a row-major 4-element array of complex.  See docs/formats.md.

#include <nlohmann/json.hpp>

#include "orthocalc/gram.hpp"
#include "orthocalc/mat2.hpp"

namespace orthocalc {

using json = nlohmann::json;

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx cplx_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError("expected complex number as [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(const Mat2& m) {
    return json::array({to_json(m.a), to_json(m.b), to_json(m.c), to_json(m.d)});
}

inline Mat2 mat2_from_json(const json& j) {
    if (!j.is_array() || j.size() != 4)
        throw ParseError("expected matrix as row-major 4-element array");
    return {cplx_from_json(j[0]), cplx_from_json(j[1]), cplx_from_json(j[2]),
            cplx_from_json(j[3])};
}

inline json to_json(const GramMatrix& X) {
    json rows = json::array();
    for (int i = 0; i < X.n; ++i) {
        json row = json::array();
        for (int j = 0; j < X.n; ++j) row.push_back(to_json(X.x[i][j]));
        rows.push_back(row);
    }
    return json{{"n", X.n}, {"entries", rows}};
}

inline GramMatrix gram_from_json(const json& j) {
    if (!j.contains("n") || !j.contains("entries"))
        throw ParseError("Gram matrix needs fields n and entries");
    int n = j["n"].get<int>();
    const json& rows = j["entries"];
    if (static_cast<int>(rows.size()) != n)
        throw ParseError("Gram matrix entry count does not match n");
    std::vector<std::vector<cplx>> e(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            throw ParseError("Gram matrix row length does not match n");
        for (int k = 0; k < n; ++k) e[i].push_back(cplx_from_json(rows[i][k]));
    }
    try {
        return GramMatrix(std::move(e));
    } catch (const ParseError&) {
        throw;
    }
}

inline json params_to_json(const std::vector<cplx>& p) {
    json out = json::array();
    for (cplx v : p) out.push_back(to_json(v));
    return out;
}

inline std::vector<cplx> params_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("expected an array of complex numbers");
    std::vector<cplx> p;
    for (const auto& v : j) p.push_back(cplx_from_json(v));
    return p;
}

}  // namespace orthocalc
