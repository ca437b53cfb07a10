#include "starcodim/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace starcodim {

namespace {

[[noreturn]] void fail(const std::string& src, int line, const std::string& msg) {
    throw ParseError(src + ":" + std::to_string(line) + ": " + msg);
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string t;
    while (ss >> t) out.push_back(t);
    return out;
}

long to_long(const std::string& s, const std::string& src, int line, const std::string& what) {
    try {
        size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        fail(src, line, "bad " + what + " '" + s + "'");
    }
}

}  // namespace

AlgebraPtr load_algebra(std::istream& in, const std::string& src) {
    std::string name;
    int dim = -1;
    std::vector<std::string> labels;
    std::vector<std::vector<Rational>> inv;
    std::vector<SparseVec> products;
    std::map<std::pair<int, int>, std::vector<bool>> seen_triples;
    bool have_involution = false;

    std::string line;
    int lineno = 0;
    int pending_matrix_rows = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto tks = tokens(line);
        if (tks.empty() || tks[0][0] == '#') continue;

        if (pending_matrix_rows > 0) {
            int row = dim - pending_matrix_rows;
            if (static_cast<int>(tks.size()) != dim)
                fail(src, lineno, "involution matrix row needs " + std::to_string(dim) + " entries");
            for (int c = 0; c < dim; ++c) {
                try {
                    inv[row][c] = parse_rational(tks[c]);
                } catch (const ParseError& e) {
                    fail(src, lineno, e.what());
                }
            }
            --pending_matrix_rows;
            continue;
        }

        const std::string& key = tks[0];
        if (key == "name") {
            if (tks.size() != 2) fail(src, lineno, "name needs one identifier");
            name = tks[1];
        } else if (key == "dim") {
            if (tks.size() != 2) fail(src, lineno, "dim needs one integer");
            long d = to_long(tks[1], src, lineno, "dimension");
            if (d < 1) fail(src, lineno, "dimension must be >= 1");
            dim = static_cast<int>(d);
            inv.assign(dim, std::vector<Rational>(dim, Rational(0)));
            products.assign(static_cast<size_t>(dim) * dim, {});
        } else if (key == "basis") {
            if (dim < 0) fail(src, lineno, "basis before dim");
            if (static_cast<int>(tks.size()) != dim + 1)
                fail(src, lineno, "basis needs exactly " + std::to_string(dim) + " labels");
            labels.assign(tks.begin() + 1, tks.end());
        } else if (key == "involution") {
            if (dim < 0) fail(src, lineno, "involution before dim");
            if (tks.size() < 2) fail(src, lineno, "involution needs 'sign ...' or 'matrix'");
            if (tks[1] == "sign") {
                if (static_cast<int>(tks.size()) != dim + 2)
                    fail(src, lineno, "involution sign needs " + std::to_string(dim) + " entries");
                for (int i = 0; i < dim; ++i) {
                    if (tks[2 + i] != "1" && tks[2 + i] != "-1")
                        fail(src, lineno, "involution sign entries must be 1 or -1");
                    inv[i][i] = (tks[2 + i] == "1") ? 1 : -1;
                }
            } else if (tks[1] == "matrix") {
                if (tks.size() != 2) fail(src, lineno, "involution matrix takes no inline entries");
                pending_matrix_rows = dim;
            } else {
                fail(src, lineno, "involution kind must be 'sign' or 'matrix'");
            }
            have_involution = true;
        } else if (key == "prod") {
            if (dim < 0) fail(src, lineno, "prod before dim");
            if (tks.size() != 5) fail(src, lineno, "prod needs i j k coefficient");
            long i = to_long(tks[1], src, lineno, "index");
            long j = to_long(tks[2], src, lineno, "index");
            long k = to_long(tks[3], src, lineno, "index");
            if (i < 1 || i > dim || j < 1 || j > dim || k < 1 || k > dim)
                fail(src, lineno, "prod index out of range 1.." + std::to_string(dim));
            Rational c;
            try {
                c = parse_rational(tks[4]);
            } catch (const ParseError& e) {
                fail(src, lineno, e.what());
            }
            auto& mask = seen_triples[{static_cast<int>(i), static_cast<int>(j)}];
            if (mask.empty()) mask.assign(dim, false);
            if (mask[k - 1])
                fail(src, lineno, "duplicate prod entry for (" + tks[1] + "," + tks[2] + "," + tks[3] + ")");
            mask[k - 1] = true;
            products[(i - 1) * static_cast<size_t>(dim) + (j - 1)].emplace_back(
                static_cast<int>(k - 1), c);
        } else {
            fail(src, lineno, "unknown directive '" + key + "'");
        }
    }
    if (pending_matrix_rows > 0) fail(src, lineno, "involution matrix is missing rows");
    if (dim < 0) fail(src, lineno, "missing dim");
    if (labels.empty()) fail(src, lineno, "missing basis");
    if (!have_involution) fail(src, lineno, "missing involution");
    if (name.empty()) name = "unnamed";
    for (auto& p : products) normalize(p);
    try {
        return std::make_shared<AlgebraWithInvolution>(name, std::move(labels),
                                                       std::move(products), std::move(inv));
    } catch (const StructuralError& e) {
        throw ParseError(src + ": " + e.what());
    }
}

AlgebraPtr load_algebra_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return load_algebra(in, path);
}

void save_algebra(const AlgebraWithInvolution& a, std::ostream& out) {
    const int d = a.dim();
    out << "name " << a.name() << "\n";
    out << "dim " << d << "\n";
    out << "basis";
    for (const auto& l : a.labels()) out << " " << l;
    out << "\n";

    bool diag_signs = true;
    for (int r = 0; r < d && diag_signs; ++r)
        for (int c = 0; c < d && diag_signs; ++c) {
            const Rational& v = a.involution()[r][c];
            if (r == c ? (v != 1 && v != -1) : (v != 0)) diag_signs = false;
        }
    if (diag_signs) {
        out << "involution sign";
        for (int i = 0; i < d; ++i) out << " " << to_string(a.involution()[i][i]);
        out << "\n";
    } else {
        out << "involution matrix\n";
        for (int r = 0; r < d; ++r) {
            for (int c = 0; c < d; ++c) out << (c ? " " : "") << to_string(a.involution()[r][c]);
            out << "\n";
        }
    }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (const auto& [k, c] : a.product(i, j))
                out << "prod " << i + 1 << " " << j + 1 << " " << k + 1 << " " << to_string(c)
                    << "\n";
}

std::string algebra_to_string(const AlgebraWithInvolution& a) {
    std::ostringstream ss;
    save_algebra(a, ss);
    return ss.str();
}

}  // namespace starcodim
