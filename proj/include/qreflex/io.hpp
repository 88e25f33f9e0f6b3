#pragma once

/// The flat interchange formats (polytope, cone, equation files), parsing
/// with line-accurate errors, and canonical printing.  parse(print(x)) is
/// the identity on canonical forms.

#include "qreflex/cones.hpp"
#include "qreflex/polytope.hpp"
#include "qreflex/toric.hpp"

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace qreflex {

// Polytope file:     "<rank> <n> <M|N>" then n rows of rank rationals.
// Cone file:         "<rank> <n> C"     then n rows of rank integers (generators).
// Rationals print as "p/q" in lowest terms, integers as bare integers.

struct ParsedVertexFile {
    int rank = 0;
    char tag = 'M';
    std::vector<VecQ> rows;
    std::vector<VecQ> dropped;  // non-extreme input rows, reported by parse_polytope
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

inline ParsedVertexFile parse_vertex_file(const std::string& text) {
    ParsedVertexFile out;
    std::istringstream ss(text);
    std::string line;
    int lineno = 0;
    // header
    int n = -1;
    while (std::getline(ss, line)) {
        ++lineno;
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks.size() != 3) throw ParseError("header must be '<rank> <count> <M|N|C>'", lineno);
        try {
            out.rank = std::stoi(toks[0]);
            n = std::stoi(toks[1]);
        } catch (...) {
            throw ParseError("malformed header numbers", lineno);
        }
        if (toks[2] != "M" && toks[2] != "N" && toks[2] != "C")
            throw ParseError("lattice tag must be M, N, or C", lineno);
        out.tag = toks[2][0];
        break;
    }
    if (n < 0) throw ParseError("missing header", lineno ? lineno : 1);
    if (out.rank <= 0) throw ParseError("rank must be positive", lineno);
    if (n == 0) throw ParseError("vertex count must be positive", lineno);
    while (static_cast<int>(out.rows.size()) < n && std::getline(ss, line)) {
        ++lineno;
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (static_cast<int>(toks.size()) != out.rank)
            throw ParseError("expected " + std::to_string(out.rank) + " entries, found " + std::to_string(toks.size()),
                             lineno);
        VecQ row;
        for (const auto& t : toks) {
            try {
                row.push_back(Rational::parse(t));
            } catch (const std::exception& e) {
                throw ParseError(std::string("malformed rational '") + t + "': " + e.what(), lineno);
            }
        }
        out.rows.push_back(std::move(row));
    }
    if (static_cast<int>(out.rows.size()) != n) throw ParseError("fewer rows than the header announced", lineno);
    return out;
}

}  // namespace detail

/// Parses and canonicalizes a polytope; redundant input points are recorded.
inline Polytope parse_polytope(const std::string& text, ParsedVertexFile* info = nullptr) {
    ParsedVertexFile f = detail::parse_vertex_file(text);
    if (f.tag == 'C') throw ParseError("expected a polytope file (tag M or N), found a cone file", 1);
    LatticeTag tag = f.tag == 'M' ? LatticeTag::M : LatticeTag::N;
    Polytope P = Polytope::hull(f.rows, f.rank, tag);
    for (const auto& row : f.rows) {
        bool is_vertex = false;
        for (const auto& v : P.vertices()) is_vertex = is_vertex || v == row;
        if (!is_vertex) f.dropped.push_back(row);
    }
    if (info) *info = f;
    return P;
}

inline GradedCone parse_cone(const std::string& text) {
    ParsedVertexFile f = detail::parse_vertex_file(text);
    if (f.tag != 'C') throw ParseError("expected a cone file (tag C)", 1);
    std::vector<VecZ> gens;
    for (size_t i = 0; i < f.rows.size(); ++i) {
        auto z = to_vecz(f.rows[i]);
        if (!z) throw ParseError("cone generators must be integral (row " + std::to_string(i + 1) + ")", 1);
        gens.push_back(std::move(*z));
    }
    return graded(PolyhedralCone::from_generators(gens, f.rank, LatticeTag::M));
}

inline std::string print_polytope(const Polytope& P) {
    std::ostringstream os;
    os << P.rank() << " " << P.vertices().size() << " " << tag_letter(P.tag()) << "\n";
    for (const auto& v : P.vertices()) {
        for (size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i].to_string();
        os << "\n";
    }
    return os.str();
}

inline std::string print_cone(const GradedCone& C) {
    std::ostringstream os;
    os << C.cone.rank() << " " << C.cone.generators().size() << " C\n";
    for (const auto& g : C.cone.generators()) {
        for (size_t i = 0; i < g.size(); ++i) os << (i ? " " : "") << g[i].to_string();
        os << "\n";
    }
    return os.str();
}

/// Equation file: a header, the ray context (Cox encoding), then one line
/// per term "i ; m-coordinates ; exponent-vector [; coefficient]".
inline std::string print_laurent(const LaurentSystem& sys) {
    std::ostringstream os;
    bool cox = sys.encoding == LaurentSystem::Encoding::CoxMonomials;
    os << "laurent " << (cox ? "cox" : "semigroup") << " " << sys.equations.size() << " " << sys.variable_count
       << "\n";
    if (cox) {
        for (const auto& r : sys.rays) {
            os << "ray";
            for (const auto& c : r) os << " " << c.to_string();
            os << "\n";
        }
    }
    for (size_t e = 0; e < sys.equations.size(); ++e) {
        for (const auto& t : sys.equations[e]) {
            os << (e + 1) << " ;";
            for (const auto& c : t.point) os << " " << c.to_string();
            os << " ;";
            for (const auto& x : t.exponents) os << " " << x.to_string();
            if (t.coefficient) os << " ; " << t.coefficient->to_string();
            os << "\n";
        }
    }
    return os.str();
}

/// Human-readable rendering: a_{i,m} x0^e0 x1^e1 ... per term.
inline std::string pretty_laurent(const LaurentSystem& sys) {
    std::ostringstream os;
    for (size_t e = 0; e < sys.equations.size(); ++e) {
        os << "f_" << (e + 1) << " = ";
        bool first = true;
        for (const auto& t : sys.equations[e]) {
            if (!first) os << " + ";
            first = false;
            if (t.coefficient)
                os << "(" << t.coefficient->to_string() << ")";
            else {
                os << "a{" << (e + 1) << ",(";
                for (size_t i = 0; i < t.point.size(); ++i) os << (i ? "," : "") << t.point[i].to_string();
                os << ")}";
            }
            if (sys.encoding == LaurentSystem::Encoding::CoxMonomials) {
                for (size_t i = 0; i < t.exponents.size(); ++i) {
                    if (t.exponents[i].is_zero()) continue;
                    os << "*x" << i;
                    if (!t.exponents[i].is_one()) os << "^" << t.exponents[i].to_string();
                }
            } else {
                os << "*chi^(";
                for (size_t i = 0; i < t.point.size(); ++i) os << (i ? "," : "") << t.point[i].to_string();
                os << ")";
            }
        }
        os << " = 0\n";
    }
    return os.str();
}

/// FNV-1a hash of file contents, for run reports.
inline std::string content_hash(const std::string& data) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace qreflex
