#include "dh/io.hpp"

#include <fstream>
#include <sstream>

namespace dh {

namespace {

std::vector<std::vector<std::string>> tokenized_lines(std::string_view text) {
    std::vector<std::vector<std::string>> lines;
    std::string current;
    std::istringstream in{std::string(text)};
    while (std::getline(in, current)) {
        if (auto hash = current.find('#'); hash != std::string::npos)
            current = current.substr(0, hash);
        std::istringstream ls(current);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t)
            toks.push_back(t);
        if (!toks.empty())
            lines.push_back(std::move(toks));
    }
    return lines;
}

int parse_count(const std::string& tok, const char* what) {
    try {
        std::size_t pos = 0;
        int n = std::stoi(tok, &pos);
        if (pos != tok.size() || n < 0)
            throw ParseError(std::string("bad ") + what + ": " + tok);
        return n;
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        throw ParseError(std::string("bad ") + what + ": " + tok);
    }
}

} // namespace

CoxeterSystem parse_coxeter(std::string_view text) {
    auto lines = tokenized_lines(text);
    if (lines.empty() || lines[0].size() != 2 || lines[0][0] != "coxeter")
        throw ParseError("expected header line: coxeter <n>");
    const int n = parse_count(lines[0][1], "generator count");
    if (n < 1)
        throw ParseError("need at least one generator");
    if (lines.size() < static_cast<std::size_t>(2 + n))
        throw ParseError("truncated Coxeter file");
    if (static_cast<int>(lines[1].size()) != n)
        throw ParseError("generator name line must list exactly n names");
    std::vector<std::string> names = lines[1];

    std::vector<std::vector<int>> orders(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
        const auto& row = lines[2 + i];
        if (static_cast<int>(row.size()) != n)
            throw ParseError("matrix row " + std::to_string(i + 1) +
                             " must have n entries");
        for (int j = 0; j < n; ++j) {
            if (row[j] == "inf") {
                orders[i][j] = infinite_order;
                continue;
            }
            try {
                std::size_t pos = 0;
                int m = std::stoi(row[j], &pos);
                if (pos != row[j].size() || m < 1)
                    throw ParseError("bad matrix entry: " + row[j]);
                orders[i][j] = m;
            } catch (const ParseError&) {
                throw;
            } catch (...) {
                throw ParseError("bad matrix entry: " + row[j]);
            }
        }
    }
    return CoxeterSystem(std::move(names), std::move(orders));
}

SimplicialComplex parse_complex(std::string_view text) {
    auto lines = tokenized_lines(text);
    if (lines.empty() || lines[0].size() != 2 || lines[0][0] != "complex")
        throw ParseError("expected header line: complex <vertex-count>");
    const int n = parse_count(lines[0][1], "vertex count");
    std::vector<std::string> labels;
    std::size_t facet_start = 1;
    if (n > 0) {
        if (lines.size() < 2 || static_cast<int>(lines[1].size()) != n)
            throw ParseError("vertex name line must list exactly n names");
        labels = lines[1];
        facet_start = 2;
    }
    std::map<std::string, int> index;
    for (int v = 0; v < n; ++v) {
        if (!index.emplace(labels[v], v).second)
            throw ParseError("duplicate vertex name: " + labels[v]);
    }
    std::vector<Simplex> facets;
    for (std::size_t li = facet_start; li < lines.size(); ++li) {
        Simplex f;
        for (const std::string& name : lines[li]) {
            auto it = index.find(name);
            if (it == index.end())
                throw ParseError("unknown vertex in facet: " + name);
            f.push_back(it->second);
        }
        facets.push_back(std::move(f));
    }
    return SimplicialComplex::from_facets(std::move(labels), std::move(facets));
}

std::string format_coxeter(const CoxeterSystem& W) {
    std::ostringstream os;
    os << "coxeter " << W.rank() << "\n";
    for (int i = 0; i < W.rank(); ++i)
        os << (i ? " " : "") << W.name_of(i);
    os << "\n";
    for (int i = 0; i < W.rank(); ++i) {
        for (int j = 0; j < W.rank(); ++j) {
            if (j)
                os << " ";
            const int m = W.order(i, j);
            if (m == infinite_order)
                os << "inf";
            else
                os << m;
        }
        os << "\n";
    }
    return os.str();
}

std::string format_complex(const SimplicialComplex& K) {
    std::ostringstream os;
    os << "complex " << K.n_vertices() << "\n";
    for (int v = 0; v < K.n_vertices(); ++v)
        os << (v ? " " : "") << K.label(v);
    if (K.n_vertices() > 0)
        os << "\n";
    for (const Simplex& f : K.facets()) {
        for (std::size_t i = 0; i < f.size(); ++i)
            os << (i ? " " : "") << K.label(f[i]);
        os << "\n";
    }
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write file: " + path);
    out << contents;
}

std::string content_digest(std::string_view text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace dh
