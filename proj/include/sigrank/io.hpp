#pragma once

// JSON and CSV formats. All numbers are exact rational strings such as
// "-3/4"; optional float columns are marked lossy and never read back.
//
//   Tensor          {"order": k, "dim": d, "entries": ["p/q", ...]}   (lexicographic, index 1 slowest)
//   Path            {"dim": d, "increments": [["1","0"], ...]}
//   Signature       {"dim": d, "max_level": K, "levels": [Tensor, ...]}          levels 0..K
//   LogSignature    {"dim": d, "max_level": K, "levels": [Tensor, ...]}          levels 1..K
//   Decomposition   {"dim": d, "order": k, "terms": [{"coeff": "c", "factors": [[...], ...]}]}
//   Time series CSV one sample per line, comma-separated rationals; '#' starts a comment line.

#include "conciseness.hpp"
#include "decomposition.hpp"
#include "exact.hpp"
#include "lie.hpp"
#include "matrix.hpp"
#include "rank.hpp"
#include "signature.hpp"
#include "symmetry.hpp"
#include "tensor.hpp"

#include <json.hpp>

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace sigrank {

using Json = nlohmann::json;

namespace detail {

inline const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(where + ": missing field \"" + key + "\"");
    return *it;
}

inline std::size_t size_field(const Json& j, const char* key, const std::string& where) {
    const Json& v = field(j, key, where);
    if (!v.is_number_unsigned()) throw ParseError(where + "/" + key + ": expected a non-negative integer");
    return v.get<std::size_t>();
}

inline Rational rational_value(const Json& v, const std::string& where) {
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const ParseError& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    if (v.is_number_integer()) return Rational(v.get<long>());
    throw ParseError(where + ": expected a rational string like \"-3/4\"");
}

inline Vec vec_value(const Json& v, const std::string& where) {
    if (!v.is_array()) throw ParseError(where + ": expected an array");
    Vec out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rational_value(v[i], where + "/" + std::to_string(i)));
    return out;
}

inline Json lossy(const Rational& r) { return r.get_d(); }

}  // namespace detail

inline Json to_json(const Rational& r) { return to_string(r); }

inline Json to_json(std::span<const Rational> v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

inline Json lossy_json(std::span<const Rational> v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(detail::lossy(x));
    return out;
}

inline Json to_json(const Tensor& t, bool with_float = false) {
    Json out{{"order", t.order()}, {"dim", t.dim()}, {"entries", to_json(std::span<const Rational>(t.entries()))}};
    if (with_float) out["entries_float_lossy"] = lossy_json(t.entries());
    return out;
}

inline Tensor tensor_from_json(const Json& j, const std::string& where = "tensor") {
    const std::size_t order = detail::size_field(j, "order", where);
    const std::size_t dim = detail::size_field(j, "dim", where);
    if (dim == 0) throw ParseError(where + "/dim: must be at least 1");
    Vec entries = detail::vec_value(detail::field(j, "entries", where), where + "/entries");
    if (entries.size() != ipow(dim, order))
        throw ParseError(where + "/entries: expected " + std::to_string(ipow(dim, order)) + " entries, found " +
                         std::to_string(entries.size()));
    return Tensor(order, dim, std::move(entries));
}

inline Json to_json(const Path& p) {
    Json inc = Json::array();
    for (const auto& u : p.increments()) inc.push_back(to_json(std::span<const Rational>(u)));
    return Json{{"dim", p.dim()}, {"increments", inc}};
}

inline Path path_from_json(const Json& j, const std::string& where = "path") {
    const std::size_t dim = detail::size_field(j, "dim", where);
    const Json& inc = detail::field(j, "increments", where);
    if (!inc.is_array() || inc.empty()) throw ParseError(where + "/increments: expected a nonempty array");
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < inc.size(); ++i) {
        const std::string at = where + "/increments/" + std::to_string(i);
        rows.push_back(detail::vec_value(inc[i], at));
        if (rows.back().size() != dim)
            throw ParseError(at + ": expected " + std::to_string(dim) + " coordinates");
    }
    if (dim == 0) throw ParseError(where + "/dim: must be at least 1");
    return Path(dim, std::move(rows));
}

inline Json to_json(const TruncatedSignature& s, bool with_float = false) {
    Json levels = Json::array();
    for (const auto& t : s.levels()) levels.push_back(to_json(t, with_float));
    return Json{{"dim", s.dim()}, {"max_level", s.max_level()}, {"levels", levels}};
}

inline TruncatedSignature signature_from_json(const Json& j, const std::string& where = "signature") {
    const std::size_t dim = detail::size_field(j, "dim", where);
    const std::size_t K = detail::size_field(j, "max_level", where);
    const Json& lv = detail::field(j, "levels", where);
    if (!lv.is_array() || lv.size() != K + 1)
        throw ParseError(where + "/levels: expected " + std::to_string(K + 1) + " levels (0.." + std::to_string(K) + ")");
    std::vector<Tensor> levels;
    for (std::size_t k = 0; k <= K; ++k) {
        const std::string at = where + "/levels/" + std::to_string(k);
        levels.push_back(tensor_from_json(lv[k], at));
        if (levels.back().order() != k || levels.back().dim() != dim) throw ParseError(at + ": wrong order or dim");
    }
    return TruncatedSignature(dim, std::move(levels));
}

inline Json to_json(const LogSignature& l, bool with_float = false) {
    Json levels = Json::array();
    for (const auto& t : l.levels()) levels.push_back(to_json(t, with_float));
    return Json{{"dim", l.dim()}, {"max_level", l.max_level()}, {"levels", levels}};
}

/// Shape errors are ParseError; a level that is not Lie is a MathError.
inline LogSignature log_signature_from_json(const Json& j, const std::string& where = "log_signature") {
    const std::size_t dim = detail::size_field(j, "dim", where);
    const std::size_t K = detail::size_field(j, "max_level", where);
    const Json& lv = detail::field(j, "levels", where);
    if (!lv.is_array() || lv.size() != K)
        throw ParseError(where + "/levels: expected " + std::to_string(K) + " levels (1.." + std::to_string(K) + ")");
    std::vector<Tensor> levels;
    for (std::size_t k = 1; k <= K; ++k) {
        const std::string at = where + "/levels/" + std::to_string(k - 1);
        levels.push_back(tensor_from_json(lv[k - 1], at));
        if (levels.back().order() != k || levels.back().dim() != dim) throw ParseError(at + ": wrong order or dim");
    }
    return LogSignature(dim, std::move(levels));
}

inline Json to_json(const Decomposition& dec) {
    Json terms = Json::array();
    for (const auto& t : dec.terms()) {
        Json factors = Json::array();
        for (const auto& f : t.factors) factors.push_back(to_json(std::span<const Rational>(f)));
        terms.push_back(Json{{"coeff", to_string(t.coeff)}, {"factors", factors}});
    }
    return Json{{"dim", dec.dim()}, {"order", dec.order()}, {"terms", terms}};
}

inline Decomposition decomposition_from_json(const Json& j, const std::string& where = "decomposition") {
    const std::size_t dim = detail::size_field(j, "dim", where);
    const std::size_t order = detail::size_field(j, "order", where);
    const Json& terms = detail::field(j, "terms", where);
    if (!terms.is_array()) throw ParseError(where + "/terms: expected an array");
    Decomposition dec(dim, order);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string at = where + "/terms/" + std::to_string(i);
        Rational c = detail::rational_value(detail::field(terms[i], "coeff", at), at + "/coeff");
        const Json& fs = detail::field(terms[i], "factors", at);
        if (!fs.is_array() || fs.size() != order)
            throw ParseError(at + "/factors: expected " + std::to_string(order) + " factors");
        std::vector<Vec> factors;
        for (std::size_t p = 0; p < fs.size(); ++p) {
            factors.push_back(detail::vec_value(fs[p], at + "/factors/" + std::to_string(p)));
            if (factors.back().size() != dim)
                throw ParseError(at + "/factors/" + std::to_string(p) + ": expected " + std::to_string(dim) +
                                 " coordinates");
        }
        dec.add(std::move(c), std::move(factors));
    }
    return dec;
}

inline Json to_json(const Subspace& s) {
    Json basis = Json::array();
    for (const auto& v : s.basis_vectors()) basis.push_back(to_json(std::span<const Rational>(v)));
    return Json{{"ambient_dim", s.ambient_dim()}, {"dim", s.dim()}, {"basis", basis}};
}

inline Subspace subspace_from_json(const Json& j, const std::string& where = "subspace") {
    const std::size_t ambient = detail::size_field(j, "ambient_dim", where);
    const Json& basis = detail::field(j, "basis", where);
    if (!basis.is_array()) throw ParseError(where + "/basis: expected an array");
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        rows.push_back(detail::vec_value(basis[i], where + "/basis/" + std::to_string(i)));
        if (rows.back().size() != ambient) throw ParseError(where + "/basis/" + std::to_string(i) + ": wrong length");
    }
    return Subspace::span(rows, ambient);
}

inline Json to_json(const SymmetryReport& r) {
    Json partial = Json::array();
    if (r.partial_first) partial.push_back(to_string(Block::first));
    if (r.partial_last) partial.push_back(to_string(Block::last));
    Json out{{"is_symmetric", r.is_symmetric}, {"is_skew", r.is_skew}, {"partial", partial}};
    if (r.witness) {
        // Positions and indices are reported 1-based, like word letters.
        Json idx = Json::array();
        for (auto i : r.witness->index) idx.push_back(i + 1);
        out["witness"] = Json{{"property", r.witness->property},
                              {"positions", {r.witness->position + 1, r.witness->position + 2}},
                              {"index", idx}};
    } else {
        out["witness"] = nullptr;
    }
    return out;
}

inline Json to_json(const RankCertificate& c) {
    Json out{{"lower", c.lower}, {"upper", c.upper}, {"exact", c.exact()}};
    if (c.witness) out["witness"] = to_json(*c.witness);
    return out;
}

/// {"123": 1, "132": 1, ...}, keyed by the word's text form.
inline Json to_json(const WordSum& ws) {
    Json terms = Json::object();
    for (const auto& [w, c] : ws.terms()) terms[to_string(w)] = c;
    return terms;
}

/// Parses JSON text; syntax errors carry line and column.
inline Json parse_json(std::string_view text, const std::string& source = "input") {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(source + ": " + e.what());
    }
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Json read_json_file(const std::string& path) { return parse_json(read_text_file(path), path); }

/// One sample per line; errors name the line and column.
inline std::vector<Vec> parse_time_series_csv(std::string_view text, const std::string& source = "csv") {
    std::vector<Vec> rows;
    std::size_t line_no = 0, pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string_view::npos || line[first] == '#') continue;
        Vec row;
        std::size_t col = 0;
        while (col <= line.size()) {
            auto comma = line.find(',', col);
            if (comma == std::string_view::npos) comma = line.size();
            std::string_view cell = line.substr(col, comma - col);
            const auto b = cell.find_first_not_of(" \t");
            const auto e = cell.find_last_not_of(" \t");
            const std::string trimmed = b == std::string_view::npos ? "" : std::string(cell.substr(b, e - b + 1));
            try {
                row.push_back(parse_rational(trimmed));
            } catch (const ParseError& err) {
                throw ParseError(source + ":" + std::to_string(line_no) + ":" + std::to_string(col + 1) + ": " +
                                 err.what());
            }
            col = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError(source + ":" + std::to_string(line_no) + ": expected " +
                             std::to_string(rows.front().size()) + " columns, found " + std::to_string(row.size()));
        rows.push_back(std::move(row));
        if (end == text.size()) break;
    }
    return rows;
}

}  // namespace sigrank
