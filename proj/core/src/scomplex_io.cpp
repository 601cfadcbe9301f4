#include "sqconf/scomplex_io.hpp"

#include <fstream>
#include <sstream>

#include "sqconf/errors.hpp"

namespace sqconf {

void write_scomplex(std::ostream& out, const CubeComplex& cx) {
    out << "scomplex 1\n";
    for (const Cell& c : cx.cells()) {
        out << "c " << c.id << ' ' << c.dim;
        if (!c.label.empty()) out << ' ' << c.label;
        out << '\n';
    }
    for (const Cell& c : cx.cells())
        for (const Facet& f : c.faces) out << "b " << c.id << ' ' << f.id << ' ' << (f.sign > 0 ? "+1" : "-1") << '\n';
}

std::string to_scomplex(const CubeComplex& cx) {
    std::ostringstream os;
    write_scomplex(os, cx);
    return os.str();
}

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw InputError("scomplex line " + std::to_string(line) + ": " + msg);
}

unsigned long parse_uint(const std::string& tok, std::size_t line) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) fail(line, "bad integer '" + tok + "'");
    try {
        return std::stoul(tok);
    } catch (const std::exception&) {
        fail(line, "integer out of range '" + tok + "'");
    }
}

}  // namespace

CubeComplex read_scomplex(std::istream& in, ComplexMetadata meta) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw InputError("scomplex: empty input");
    ++lineno;
    if (line != "scomplex 1") fail(lineno, "expected header 'scomplex 1'");

    std::vector<Cell> cells;
    bool in_incidences = false;
    long long last_id = -1, last_face = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kind;
        ls >> kind;
        if (kind == "c") {
            if (in_incidences) fail(lineno, "cell line after incidence lines");
            std::string id_tok, dim_tok;
            ls >> id_tok >> dim_tok;
            auto id = parse_uint(id_tok, lineno);
            if (id != cells.size()) fail(lineno, "cell ids must be consecutive from 0");
            Cell c;
            c.id = static_cast<CellId>(id);
            c.dim = static_cast<int>(parse_uint(dim_tok, lineno));
            std::string label;
            if (ls >> label) {
                std::string extra;
                if (ls >> extra) fail(lineno, "labels may not contain whitespace");
                c.label = label;
            }
            cells.push_back(std::move(c));
        } else if (kind == "b") {
            in_incidences = true;
            std::string id_tok, face_tok, sign_tok, extra;
            ls >> id_tok >> face_tok >> sign_tok;
            if (ls >> extra) fail(lineno, "trailing tokens");
            auto id = static_cast<long long>(parse_uint(id_tok, lineno));
            auto face = static_cast<long long>(parse_uint(face_tok, lineno));
            if (id >= static_cast<long long>(cells.size()) || face >= static_cast<long long>(cells.size()))
                fail(lineno, "incidence refers to unknown cell");
            if (id < last_id || (id == last_id && face <= last_face)) fail(lineno, "incidences not sorted by (id, face_id)");
            int sign;
            if (sign_tok == "+1") sign = 1;
            else if (sign_tok == "-1") sign = -1;
            else fail(lineno, "incidence sign must be +1 or -1");
            cells[id].faces.push_back({static_cast<CellId>(face), sign});
            last_id = id;
            last_face = face;
        } else {
            fail(lineno, "unknown record '" + kind + "'");
        }
    }
    return CubeComplex::from_cells(std::move(cells), std::move(meta));
}

CubeComplex parse_scomplex(const std::string& text, ComplexMetadata meta) {
    std::istringstream is(text);
    return read_scomplex(is, std::move(meta));
}

CubeComplex load_scomplex(const std::string& path, ComplexMetadata meta) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    return read_scomplex(in, std::move(meta));
}

void save_scomplex(const std::string& path, const CubeComplex& cx) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    write_scomplex(out, cx);
}

}  // namespace sqconf
