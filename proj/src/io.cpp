#include "bpgeo/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <vector>

#include "bpgeo/error.hpp"

namespace bpgeo::io {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t k = 0;
    while (k < line.size()) {
        while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k]))) ++k;
        std::size_t start = k;
        while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k]))) ++k;
        if (k > start) out.push_back(line.substr(start, k - start));
    }
    return out;
}

double parse_double(std::string_view tok, std::size_t line_no) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line_no) + ": '" + std::string(tok) + "' is not a number");
    return v;
}

}  // namespace

Mat parse_matrix_text(std::string_view text) {
    std::vector<std::pair<std::size_t, std::vector<std::string_view>>> lines;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        auto toks = split_ws(text.substr(pos, end - pos));
        if (!toks.empty()) lines.emplace_back(line_no, std::move(toks));
        pos = end + 1;
    }
    if (lines.empty()) throw Error(ErrorCode::ParseError, "empty matrix text");

    const auto& header = lines.front();
    if (header.second.size() != 1) throw Error(ErrorCode::ParseError, "line 1: expected the dimension n alone");
    std::size_t n = 0;
    {
        auto tok = header.second.front();
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), n);
        if (ec != std::errc{} || ptr != tok.data() + tok.size() || n == 0)
            throw Error(ErrorCode::ParseError, "line " + std::to_string(header.first) + ": bad dimension");
    }
    if (lines.size() != n + 1)
        throw Error(ErrorCode::ParseError,
                    "expected " + std::to_string(n) + " matrix rows, found " + std::to_string(lines.size() - 1));

    std::vector<std::vector<double>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& [no, toks] = lines[i + 1];
        if (toks.size() != n)
            throw Error(ErrorCode::ParseError, "line " + std::to_string(no) + ": expected " + std::to_string(n) +
                                                   " entries, found " + std::to_string(toks.size()));
        rows[i].reserve(n);
        for (auto tok : toks) rows[i].push_back(parse_double(tok, no));
    }
    return Mat::from_rows(rows);
}

std::string format_matrix_text(const Mat& m) {
    std::string out = std::to_string(m.n()) + "\n";
    char buf[40];
    for (std::size_t i = 0; i < m.n(); ++i) {
        for (std::size_t j = 0; j < m.n(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
            if (j > 0) out += ' ';
            out += buf;
        }
        out += '\n';
    }
    return out;
}

Mat matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("rows"))
        throw Error(ErrorCode::ParseError, "matrix JSON needs keys \"n\" and \"rows\"");
    if (!j["n"].is_number_integer() || j["n"].get<long long>() <= 0)
        throw Error(ErrorCode::ParseError, "\"n\" must be a positive integer");
    const auto n = static_cast<std::size_t>(j["n"].get<long long>());
    const auto& rows_json = j["rows"];
    if (!rows_json.is_array() || rows_json.size() != n)
        throw Error(ErrorCode::ParseError, "\"rows\" must hold n arrays");
    std::vector<std::vector<double>> rows;
    rows.reserve(n);
    for (const auto& r : rows_json) {
        if (!r.is_array()) throw Error(ErrorCode::ParseError, "each row must be an array");
        std::vector<double> row;
        for (const auto& v : r) {
            if (!v.is_number()) throw Error(ErrorCode::ParseError, "matrix entries must be numbers");
            row.push_back(v.get<double>());
        }
        rows.push_back(std::move(row));
    }
    return Mat::from_rows(rows);
}

nlohmann::json matrix_to_json(const Mat& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.n(); ++i) rows.push_back(std::vector<double>(m.row(i).begin(), m.row(i).end()));
    return {{"n", m.n()}, {"rows", std::move(rows)}};
}

Mat parse_matrix(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') {
        nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
        if (j.is_discarded()) throw Error(ErrorCode::ParseError, "malformed matrix JSON");
        return matrix_from_json(j);
    }
    return parse_matrix_text(text);
}

Mat load_matrix(const std::string& path, std::istream& stdin_stream) {
    std::string content;
    if (path == "-") {
        content.assign(std::istreambuf_iterator<char>(stdin_stream), std::istreambuf_iterator<char>());
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        content = ss.str();
    }
    try {
        return parse_matrix(content);
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.detail());
    }
}

}  // namespace bpgeo::io
