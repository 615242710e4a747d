#include "seriation/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "seriation/error.hpp"

namespace seriation {

namespace {

std::vector<std::string> split(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    for (std::string tok; ss >> tok;) out.push_back(tok);
    return out;
}

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

std::size_t parse_index(const std::string& tok, std::size_t line) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError("expected a nonnegative integer, got '" + tok + "'", line);
    }
    return v;
}

double parse_real(const std::string& tok, std::size_t line) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
        throw ParseError("expected a finite number, got '" + tok + "'", line);
    }
    return v;
}

// Non-blank lines with their 1-based numbers.
std::vector<std::pair<std::size_t, std::string>> content_lines(std::istream& in) {
    std::vector<std::pair<std::size_t, std::string>> out;
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (!blank(line)) out.emplace_back(no, line);
    }
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string(), 0);
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

SimilarityMatrix read_similarity(std::istream& in) {
    const auto lines = content_lines(in);
    if (lines.empty()) throw ParseError("empty similarity file", 0);
    const auto head = split(lines[0].second);
    if (head.size() != 2) throw ParseError("header must be 'n count'", lines[0].first);
    const std::size_t n = parse_index(head[0], lines[0].first);
    const std::size_t count = parse_index(head[1], lines[0].first);
    if (lines.size() - 1 != count) {
        throw ParseError("header announces " + std::to_string(count) + " entries, found " +
                             std::to_string(lines.size() - 1),
                         lines.size() > count + 1 ? lines[count + 1].first : 0);
    }
    std::vector<Entry> entries;
    entries.reserve(count);
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto& [no, text] = lines[k];
        const auto tok = split(text);
        if (tok.size() != 3) throw ParseError("expected 'i j value'", no);
        const std::size_t i = parse_index(tok[0], no);
        const std::size_t j = parse_index(tok[1], no);
        const double v = parse_real(tok[2], no);
        if (i >= n || j >= n) throw ParseError("index out of range", no);
        if (i > j) throw ParseError("entries must satisfy i <= j", no);
        if (v < 0.0) throw ParseError("negative similarity", no);
        if (v == 0.0) continue;
        entries.push_back({i, j, v});
    }
    try {
        return SimilarityMatrix(n, std::move(entries));
    } catch (const DomainError& e) {
        throw ParseError(e.what(), 0);
    }
}

SimilarityMatrix read_similarity(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_similarity(in);
}

void write_similarity(std::ostream& out, const SimilarityMatrix& a) {
    out << a.n() << ' ' << a.entries().size() << '\n';
    for (const auto& e : a.entries()) out << e.i << ' ' << e.j << ' ' << format_double(e.value) << '\n';
}

void write_similarity(const std::filesystem::path& path, const SimilarityMatrix& a) {
    auto out = open_out(path);
    write_similarity(out, a);
}

Permutation read_permutation(std::istream& in) {
    std::vector<std::size_t> pos;
    for (const auto& [no, text] : content_lines(in)) {
        const auto tok = split(text);
        if (tok.size() != 1) throw ParseError("expected one integer per line", no);
        pos.push_back(parse_index(tok[0], no));
    }
    try {
        return Permutation(std::move(pos));
    } catch (const DomainError& e) {
        throw ParseError(std::string("not a permutation: ") + e.what(), 0);
    }
}

Permutation read_permutation(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_permutation(in);
}

void write_permutation(std::ostream& out, const Permutation& p) {
    for (std::size_t v : p.forward()) out << v << '\n';
}

void write_permutation(const std::filesystem::path& path, const Permutation& p) {
    auto out = open_out(path);
    write_permutation(out, p);
}

DuplicationCounts read_counts(std::istream& in) {
    std::vector<std::size_t> c;
    for (const auto& [no, text] : content_lines(in)) {
        const auto tok = split(text);
        if (tok.size() != 1) throw ParseError("expected one count per line", no);
        const std::size_t v = parse_index(tok[0], no);
        if (v == 0) throw ParseError("counts must be positive", no);
        c.push_back(v);
    }
    if (c.empty()) throw ParseError("empty counts file", 0);
    return DuplicationCounts(std::move(c));
}

DuplicationCounts read_counts(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_counts(in);
}

void write_counts(std::ostream& out, const DuplicationCounts& c) {
    for (std::size_t v : c.values()) out << v << '\n';
}

void write_counts(const std::filesystem::path& path, const DuplicationCounts& c) {
    auto out = open_out(path);
    write_counts(out, c);
}

AssignmentMatrix read_assignment(std::istream& in) {
    std::vector<std::vector<std::size_t>> lists;
    std::vector<std::size_t> sizes;
    for (const auto& [no, text] : content_lines(in)) {
        std::vector<std::size_t> l;
        for (const auto& tok : split(text)) l.push_back(parse_index(tok, no));
        sizes.push_back(l.size());
        lists.push_back(std::move(l));
    }
    try {
        return AssignmentMatrix(DuplicationCounts(std::move(sizes)), std::move(lists));
    } catch (const Error& e) {
        throw ParseError(std::string("invalid assignment: ") + e.what(), 0);
    }
}

AssignmentMatrix read_assignment(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_assignment(in);
}

void write_assignment(std::ostream& out, const AssignmentMatrix& z) {
    for (const auto& l : z.lists()) {
        for (std::size_t k = 0; k < l.size(); ++k) out << (k ? " " : "") << l[k];
        out << '\n';
    }
}

void write_assignment(const std::filesystem::path& path, const AssignmentMatrix& z) {
    auto out = open_out(path);
    write_assignment(out, z);
}

Eigen::MatrixXd read_dense(std::istream& in) {
    const auto lines = content_lines(in);
    if (lines.empty()) throw ParseError("empty matrix file", 0);
    const auto head = split(lines[0].second);
    if (head.size() != 2) throw ParseError("header must be 'rows cols'", lines[0].first);
    const std::size_t rows = parse_index(head[0], lines[0].first);
    const std::size_t cols = parse_index(head[1], lines[0].first);
    if (lines.size() - 1 != rows) throw ParseError("row count differs from header", 0);
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        const auto& [no, text] = lines[r + 1];
        const auto tok = split(text);
        if (tok.size() != cols) throw ParseError("wrong number of columns", no);
        for (std::size_t c = 0; c < cols; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = parse_real(tok[c], no);
        }
    }
    return m;
}

Eigen::MatrixXd read_dense(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_dense(in);
}

void write_dense(std::ostream& out, const Eigen::MatrixXd& m) {
    out << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) out << (c ? " " : "") << format_double(m(r, c));
        out << '\n';
    }
}

void write_dense(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
    auto out = open_out(path);
    write_dense(out, m);
}

}  // namespace seriation
