#pragma once

// Text format and command dispatch for the CLI.
//
// Document format: optional `# ...` comment lines (the first one is kept as
// the label), then `mod <d>`, then `<rows> <cols>`, then the entries row by
// row.  Entries are reduced into [0, d) on load.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "zdred/linalg.hpp"

namespace zdred {

struct MatrixDocument {
    std::int64_t modulus = 0;
    std::size_t rows = 0, cols = 0;
    std::vector<std::int64_t> entries;  // row-major, canonical
    std::string label;

    friend bool operator==(const MatrixDocument&, const MatrixDocument&) = default;
};

class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line_(line) {}
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// Raised when a certificate fails its re-verification before printing.
class SelfCheckError : public std::logic_error {
    using std::logic_error::logic_error;
};

MatrixDocument parse_document(const std::string& text);
std::string print_document(const MatrixDocument& doc);
ZdMatrix to_matrix(const MatrixDocument& doc);
MatrixDocument to_document(const ZdMatrix& m, const std::string& label = "");

struct CommandOptions {
    bool json = false;
    std::optional<std::int64_t> factor;        // Chinese factor selector
    std::optional<std::uint64_t> seed;         // randomized self-test seed
    bool require_lagrangian = false;
};

struct CommandResult {
    int exit_code = 0;           // 0 ok, 1 domain error
    std::string text;
    nlohmann::json json;
};

/// command is one of: reduce, charseq, symp-reduce, classify, lagrangian,
/// fringe, nearly-symplectic.  Throws ParseError subclasses upstream;
/// SelfCheckError means a certificate failed its own verification.
CommandResult run_command(const std::string& command, const MatrixDocument& doc,
                          const CommandOptions& opts);

}  // namespace zdred
