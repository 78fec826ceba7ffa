#include "tcount/formats.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

namespace tcount {

namespace {

struct Token {
    std::string text;
    unsigned column = 0;  // 1-based
};

std::vector<Token> tokenize_line(const std::string& line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
               line[i] != '#')
            ++i;
        out.push_back({line.substr(start, i - start), static_cast<unsigned>(start + 1)});
    }
    return out;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::optional<GateKind> gate_from_name(const std::string& name) {
    std::string s = lower(name);
    if (s == "h") return GateKind::H;
    if (s == "t") return GateKind::T;
    if (s == "s") return GateKind::S;
    if (s == "sdg") return GateKind::Sdg;
    if (s == "tdg") return GateKind::Tdg;
    if (s == "x") return GateKind::X;
    if (s == "z") return GateKind::Z;
    if (s == "cnot") return GateKind::Cnot;
    if (s == "swap") return GateKind::Swap;
    return std::nullopt;
}

unsigned parse_qubit_index(const Token& tok, unsigned line_no) {
    if (tok.text.empty() ||
        !std::all_of(tok.text.begin(), tok.text.end(),
                     [](unsigned char c) { return std::isdigit(c); }))
        throw ParseError(line_no, tok.column, "expected a qubit index, got '" + tok.text + "'");
    unsigned long v = std::stoul(tok.text);
    if (v < 1 || v > Pauli::kMaxQubits)
        throw ParseError(line_no, tok.column, "qubit index out of range");
    return static_cast<unsigned>(v);
}

Int parse_coeff(const std::string& text, unsigned line_no, unsigned column) {
    if (text.empty()) throw ParseError(line_no, column, "empty coefficient");
    std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (i == text.size()) throw ParseError(line_no, column, "expected an integer");
    for (; i < text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw ParseError(line_no, column,
                             "entries must be integers (got '" + text + "')");
    try {
        return static_cast<Int>(std::stoll(text));
    } catch (const std::exception&) {
        throw ParseError(line_no, column, "integer out of range: '" + text + "'");
    }
}

}  // namespace

Circuit parse_circuit(const std::string& text, std::optional<unsigned> qubits) {
    struct Parsed {
        GateKind kind;
        unsigned q1;
        unsigned q2;
        unsigned line;
        unsigned column;
    };
    std::vector<Parsed> gates;
    unsigned max_index = 1;

    std::istringstream in(text);
    std::string line;
    unsigned line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::vector<Token> toks = tokenize_line(line);
        if (toks.empty()) continue;
        auto kind = gate_from_name(toks[0].text);
        if (!kind)
            throw ParseError(line_no, toks[0].column, "unknown gate '" + toks[0].text + "'");
        unsigned want = gate_is_two_qubit(*kind) ? 2u : 1u;
        if (toks.size() != want + 1)
            throw ParseError(line_no, toks[0].column,
                             std::string(gate_name(*kind)) + " takes " + std::to_string(want) +
                                 (want == 1 ? " qubit index" : " qubit indices"));
        unsigned q1 = parse_qubit_index(toks[1], line_no);
        unsigned q2 = want == 2 ? parse_qubit_index(toks[2], line_no) : 0;
        if (want == 2 && q1 == q2)
            throw ParseError(line_no, toks[2].column, "two-qubit gate needs distinct qubits");
        max_index = std::max({max_index, q1, q2});
        gates.push_back({*kind, q1, q2, line_no, toks[0].column});
    }

    unsigned n = qubits.value_or(max_index);
    Circuit out(n);
    for (const Parsed& g : gates) {
        if (g.q1 > n || g.q2 > n)
            throw ParseError(g.line, g.column, "qubit index exceeds --qubits=" + std::to_string(n));
        out.push(gate_is_two_qubit(g.kind) ? Gate(g.kind, g.q1, g.q2) : Gate(g.kind, g.q1));
    }
    return out;
}

std::string print_circuit(const Circuit& circuit) {
    std::ostringstream out;
    for (const Gate& g : circuit.gates) {
        out << gate_name(g.kind) << ' ' << g.q1;
        if (gate_is_two_qubit(g.kind)) out << ' ' << g.q2;
        out << '\n';
    }
    return out.str();
}

UnitaryMatrix parse_matrix(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    unsigned line_no = 0;

    // header: unitary n=<n>
    std::vector<Token> header;
    while (std::getline(in, line)) {
        ++line_no;
        header = tokenize_line(line);
        if (!header.empty()) break;
    }
    if (header.empty()) throw ParseError(line_no ? line_no : 1, 1, "missing 'unitary n=<n>' header");
    if (lower(header[0].text) != "unitary" || header.size() != 2 ||
        header[1].text.rfind("n=", 0) != 0)
        throw ParseError(line_no, header[0].column, "expected header 'unitary n=<n>'");
    std::string nstr = header[1].text.substr(2);
    if (nstr.empty() || !std::all_of(nstr.begin(), nstr.end(),
                                     [](unsigned char c) { return std::isdigit(c); }))
        throw ParseError(line_no, header[1].column, "bad qubit count '" + nstr + "'");
    unsigned n = static_cast<unsigned>(std::stoul(nstr));
    if (n < 1 || n > Pauli::kMaxQubits)
        throw ParseError(line_no, header[1].column, "qubit count out of range");

    const std::uint32_t dim = 1u << n;
    UnitaryMatrix u(n);
    std::uint32_t row = 0;
    while (row < dim) {
        if (!std::getline(in, line))
            throw ParseError(line_no, 1,
                             "expected " + std::to_string(dim) + " matrix rows, got " +
                                 std::to_string(row));
        ++line_no;
        std::vector<Token> toks = tokenize_line(line);
        if (toks.empty()) continue;
        if (toks.size() != dim)
            throw ParseError(line_no, toks[0].column,
                             "expected " + std::to_string(dim) + " entries in this row");
        for (std::uint32_t c = 0; c < dim; ++c) {
            const Token& tok = toks[c];
            Int coeff[5];
            std::size_t start = 0;
            for (int part = 0; part < 5; ++part) {
                std::size_t comma = tok.text.find(',', start);
                bool last = part == 4;
                if (last != (comma == std::string::npos))
                    throw ParseError(line_no, tok.column,
                                     "entry must be 'a,b,c,d,k': '" + tok.text + "'");
                std::string piece = tok.text.substr(
                    start, last ? std::string::npos : comma - start);
                coeff[part] = parse_coeff(piece, line_no, tok.column);
                start = comma + 1;
            }
            if (coeff[4] < 0 || coeff[4] > 0xffff)
                throw ParseError(line_no, tok.column, "denominator exponent out of range");
            u.at(row, c) = CycloElem(coeff[0], coeff[1], coeff[2], coeff[3],
                                     static_cast<std::uint32_t>(coeff[4]));
        }
        ++row;
    }
    return u;
}

std::string print_matrix(const UnitaryMatrix& u) {
    std::ostringstream out;
    out << "unitary n=" << u.qubits() << '\n';
    for (std::uint32_t r = 0; r < u.dim(); ++r) {
        for (std::uint32_t c = 0; c < u.dim(); ++c) {
            if (c) out << ' ';
            out << u.at(r, c).to_string();
        }
        out << '\n';
    }
    return out.str();
}

InputKind detect_input_kind(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<Token> toks = tokenize_line(line);
        if (toks.empty()) continue;
        return lower(toks[0].text) == "unitary" ? InputKind::MatrixText : InputKind::CircuitText;
    }
    return InputKind::CircuitText;
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << text;
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace tcount
