#pragma once

// JSON forms shared by the CLI and by downstream tools.
//
//   matrix      {"rows": r, "cols": c, "data": [[re, im], ...]}   row-major
//   state       matrix of shape 2d x 1 plus "d"
//   basis set   {"d": d, "labels": [[n, m], ...], "states": [state, ...]}
//   pair spec   {"d": d, "S": matrix, "W": matrix}
//   phase spec  {"d": d, "phi1": x, "phi2": y, "r": [[...]...], "theta": [[...]...]}
//   report      {"passed", "criterion", "target_value", "max_abs_deviation",
//                "worst_index", "tolerance"} (+ "note", "clauses" when present)
//   candidate   {"spec": pair spec, "provenance": s, "verified": true}

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "umebmub/bases.hpp"
#include "umebmub/entanglement.hpp"
#include "umebmub/linalg.hpp"
#include "umebmub/mub.hpp"
#include "umebmub/report.hpp"
#include "umebmub/search.hpp"

namespace umebmub {

using Json = nlohmann::json;

/// Raised for JSON that does not match the documented shapes.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
    return j.at(key);
}

inline int int_field(const Json& j, const char* key) {
    const auto& v = field(j, key);
    if (!v.is_number_integer()) throw FormatError(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

inline double number(const Json& v, const char* what) {
    if (!v.is_number()) throw FormatError(std::string(what) + " must be a number");
    return v.get<double>();
}

// JSON has no NaN; non-finite values are written as null.
inline Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

inline std::vector<double> real_grid_from_json(const Json& j, int d, const char* what) {
    if (!j.is_array() || j.size() != static_cast<std::size_t>(d)) {
        throw FormatError(std::string(what) + " must be a " + std::to_string(d) + "x" + std::to_string(d) + " array");
    }
    std::vector<double> out;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != static_cast<std::size_t>(d)) {
            throw FormatError(std::string(what) + " has a malformed row");
        }
        for (const auto& v : row) out.push_back(number(v, what));
    }
    return out;
}

inline Json real_grid_to_json(const std::vector<double>& v, int d) {
    Json rows = Json::array();
    for (int i = 0; i < d; ++i) {
        Json row = Json::array();
        for (int j = 0; j < d; ++j) row.push_back(v[static_cast<std::size_t>(i * d + j)]);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace detail

inline Json to_json(const Matrix& m) {
    Json data = Json::array();
    for (const auto& z : m.data()) data.push_back(Json::array({z.real(), z.imag()}));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline Matrix matrix_from_json(const Json& j) {
    const int rows = detail::int_field(j, "rows");
    const int cols = detail::int_field(j, "cols");
    if (rows <= 0 || cols <= 0) throw FormatError("matrix dimensions must be positive");
    const auto& data = detail::field(j, "data");
    if (!data.is_array() || data.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
        throw FormatError("matrix data must hold rows*cols = " + std::to_string(rows * cols) + " entries");
    }
    std::vector<Complex> values;
    values.reserve(data.size());
    for (const auto& e : data) {
        if (!e.is_array() || e.size() != 2) throw FormatError("matrix entries must be [re, im] pairs");
        values.emplace_back(detail::number(e[0], "re"), detail::number(e[1], "im"));
    }
    return {static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), std::move(values)};
}

inline Json to_json(const BipartiteState& s) {
    Json j = to_json(Matrix::column_vector(s.amplitudes()));
    j["d"] = s.d();
    return j;
}

inline BipartiteState state_from_json(const Json& j) {
    const int d = detail::int_field(j, "d");
    const Matrix m = matrix_from_json(j);
    if (m.cols() != 1 || m.rows() != static_cast<std::size_t>(2 * d)) {
        throw DimensionError("state with d = " + std::to_string(d) + " must be a " + std::to_string(2 * d) +
                             "x1 matrix, got " + m.shape());
    }
    return {d, std::vector<Complex>(m.data().begin(), m.data().end())};
}

inline Json to_json(const BasisSet& b) {
    Json labels = Json::array();
    for (const auto& l : b.labels()) labels.push_back(Json::array({l.n, l.m}));
    Json states = Json::array();
    for (const auto& s : b.states()) states.push_back(to_json(s));
    return {{"d", b.d()}, {"labels", std::move(labels)}, {"states", std::move(states)}};
}

inline BasisSet basis_from_json(const Json& j) {
    const int d = detail::int_field(j, "d");
    const auto& labels = detail::field(j, "labels");
    const auto& states = detail::field(j, "states");
    if (!labels.is_array() || !states.is_array()) throw FormatError("labels and states must be arrays");
    std::vector<Label> ls;
    for (const auto& l : labels) {
        if (!l.is_array() || l.size() != 2 || !l[0].is_number_integer() || !l[1].is_number_integer()) {
            throw FormatError("labels must be [n, m] integer pairs");
        }
        ls.push_back({l[0].get<int>(), l[1].get<int>()});
    }
    std::vector<BipartiteState> ss;
    for (const auto& s : states) {
        auto st = state_from_json(s);
        if (st.d() != d) throw DimensionError("state dimension does not match the basis set's d");
        ss.push_back(std::move(st));
    }
    return {d, std::move(ls), std::move(ss)};
}

inline Json to_json(const MubPairSpec& s) {
    return {{"d", s.d}, {"S", to_json(s.S)}, {"W", to_json(s.W)}};
}

inline MubPairSpec spec_from_json(const Json& j) {
    return {detail::int_field(j, "d"), matrix_from_json(detail::field(j, "S")),
            matrix_from_json(detail::field(j, "W"))};
}

inline Json to_json(const PhaseSpec& p) {
    return {{"d", p.d},
            {"phi1", p.phi1},
            {"phi2", p.phi2},
            {"r", detail::real_grid_to_json(p.r, p.d)},
            {"theta", detail::real_grid_to_json(p.theta, p.d)}};
}

inline PhaseSpec phase_spec_from_json(const Json& j) {
    PhaseSpec p;
    p.d = detail::int_field(j, "d");
    if (p.d < 1) throw FormatError("d must be positive");
    p.phi1 = detail::number(detail::field(j, "phi1"), "phi1");
    p.phi2 = detail::number(detail::field(j, "phi2"), "phi2");
    p.r = detail::real_grid_from_json(detail::field(j, "r"), p.d, "r");
    p.theta = detail::real_grid_from_json(detail::field(j, "theta"), p.d, "theta");
    return p;
}

inline Json to_json(const VerificationReport& r) {
    Json j{{"passed", r.passed},
           {"criterion", r.criterion},
           {"target_value", detail::finite_or_null(r.target_value)},
           {"max_abs_deviation", detail::finite_or_null(r.max_abs_deviation)},
           {"worst_index", r.worst_index},
           {"tolerance", detail::finite_or_null(r.tolerance)}};
    if (!r.note.empty()) j["note"] = r.note;
    if (!r.clauses.empty()) {
        Json clauses = Json::array();
        for (const auto& c : r.clauses) clauses.push_back(to_json(c));
        j["clauses"] = std::move(clauses);
    }
    return j;
}

inline Json to_json(const Candidate& c) {
    return {{"spec", to_json(c.spec)}, {"provenance", c.provenance}, {"verified", c.verified}};
}

inline Candidate candidate_from_json(const Json& j) {
    const auto& v = detail::field(j, "verified");
    if (!v.is_boolean()) throw FormatError("verified must be a boolean");
    const auto& p = detail::field(j, "provenance");
    if (!p.is_string()) throw FormatError("provenance must be a string");
    return {spec_from_json(detail::field(j, "spec")), p.get<std::string>(), v.get<bool>()};
}

}  // namespace umebmub
