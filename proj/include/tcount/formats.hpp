#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "tcount/channel.hpp"
#include "tcount/circuit.hpp"

namespace tcount {

/// Text input error carrying a 1-based position.
class ParseError : public std::runtime_error {
  public:
    ParseError(unsigned line, unsigned column, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    unsigned line() const { return line_; }
    unsigned column() const { return column_; }

  private:
    unsigned line_;
    unsigned column_;
};

/// Circuit grammar: one gate per line, `NAME q [q2]`, 1-based qubit indices,
/// `#` starts a comment. Gate names come from the {H, T, S, Sdg, Tdg, X, Z,
/// CNOT, SWAP} set (case-insensitive on input). When `qubits` is absent the
/// count is inferred from the largest index used.
Circuit parse_circuit(const std::string& text, std::optional<unsigned> qubits = std::nullopt);
std::string print_circuit(const Circuit& circuit);

/// Matrix grammar: header `unitary n=<n>`, then 2^n rows of 2^n entries,
/// each entry the five comma-separated integers `a,b,c,d,k` of an exact
/// ring element. Decimal or other non-integer input is rejected.
UnitaryMatrix parse_matrix(const std::string& text);
std::string print_matrix(const UnitaryMatrix& u);

enum class InputKind { CircuitText, MatrixText };

/// Matrix files open with a `unitary` header; anything else parses as a
/// circuit.
InputKind detect_input_kind(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace tcount
