#include "zdred/io.hpp"

#include <random>
#include <sstream>

#include "zdred/fringe.hpp"
#include "zdred/oracle.hpp"

namespace zdred {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

bool blank(const std::string& s) {
    return s.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

MatrixDocument parse_document(const std::string& text) {
    MatrixDocument doc;
    auto lines = split_lines(text);
    std::size_t ln = 0;
    auto next_content = [&]() -> std::optional<std::string> {
        while (ln < lines.size()) {
            const std::string& l = lines[ln];
            ++ln;
            if (blank(l)) continue;
            auto first = l.find_first_not_of(" \t");
            if (l[first] == '#') {
                if (doc.label.empty()) {
                    auto rest = l.substr(first + 1);
                    auto b = rest.find_first_not_of(" \t");
                    if (b != std::string::npos) doc.label = rest.substr(b);
                }
                continue;
            }
            return l;
        }
        return std::nullopt;
    };

    auto header = next_content();
    if (!header) throw ParseError(ln, "missing 'mod <d>' header");
    {
        std::istringstream in(*header);
        std::string kw;
        in >> kw;
        if (kw != "mod") throw ParseError(ln, "expected 'mod <d>'");
        if (!(in >> doc.modulus)) throw ParseError(ln, "malformed modulus");
        std::string extra;
        if (in >> extra) throw ParseError(ln, "trailing tokens after modulus");
        if (doc.modulus < 2) throw ParseError(ln, "d < 2");
    }
    auto shape = next_content();
    if (!shape) throw ParseError(ln, "missing '<rows> <cols>' line");
    {
        std::istringstream in(*shape);
        long long r, c;
        if (!(in >> r >> c) || r < 0 || c < 0)
            throw ParseError(ln, "malformed shape line");
        std::string extra;
        if (in >> extra) throw ParseError(ln, "trailing tokens after shape");
        doc.rows = static_cast<std::size_t>(r);
        doc.cols = static_cast<std::size_t>(c);
    }
    Modulus m(doc.modulus);
    while (auto row = next_content()) {
        std::istringstream in(*row);
        std::int64_t v;
        while (in >> v) doc.entries.push_back(m.reduce(v));
        if (!in.eof()) throw ParseError(ln, "non-integer token");
    }
    if (doc.entries.size() != doc.rows * doc.cols)
        throw ParseError(ln, "entry count mismatch: expected " +
                                 std::to_string(doc.rows * doc.cols) + ", got " +
                                 std::to_string(doc.entries.size()));
    return doc;
}

std::string print_document(const MatrixDocument& doc) {
    std::ostringstream out;
    if (!doc.label.empty()) out << "# " << doc.label << '\n';
    out << "mod " << doc.modulus << '\n';
    out << doc.rows << ' ' << doc.cols << '\n';
    for (std::size_t i = 0; i < doc.rows; ++i) {
        for (std::size_t j = 0; j < doc.cols; ++j) {
            if (j) out << ' ';
            out << doc.entries[i * doc.cols + j];
        }
        out << '\n';
    }
    return out.str();
}

ZdMatrix to_matrix(const MatrixDocument& doc) {
    ZdMatrix m(doc.rows, doc.cols, Modulus(doc.modulus));
    for (std::size_t i = 0; i < doc.rows; ++i)
        for (std::size_t j = 0; j < doc.cols; ++j)
            m.set(i, j, doc.entries[i * doc.cols + j]);
    return m;
}

MatrixDocument to_document(const ZdMatrix& m, const std::string& label) {
    MatrixDocument doc;
    doc.modulus = m.mod().d();
    doc.rows = m.rows();
    doc.cols = m.cols();
    doc.label = label;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) doc.entries.push_back(m(i, j));
    return doc;
}

namespace {

nlohmann::json matrix_json(const ZdMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

void print_matrix(std::ostringstream& out, const std::string& name, const ZdMatrix& m) {
    out << name << " (" << m.rows() << "x" << m.cols() << "):\n" << m;
}

struct CommandContext {
    ZdMatrix input;
    nlohmann::json json;
    std::ostringstream text;
    int exit_code = 0;

    explicit CommandContext(const std::string& command, const MatrixDocument& doc)
        : input(to_matrix(doc)) {
        json["command"] = command;
        json["modulus"] = doc.modulus;
        json["input"] = {{"rows", doc.rows}, {"cols", doc.cols},
                         {"entries", doc.entries}, {"label", doc.label}};
        json["certificate"] = nullptr;
        json["flags"] = nullptr;
        json["rents"] = nlohmann::json::array();
        json["signature"] = nlohmann::json::array();
    }
};

ZdMatrix select_factor(const ZdMatrix& m, const CommandOptions& opts,
                       const char* command) {
    if (opts.factor) {
        if (m.mod().exponent_of(*opts.factor) == 0)
            throw std::invalid_argument("--factor must name a prime factor of d");
        return matrix_pi_p(m, *opts.factor);
    }
    if (!m.mod().is_prime_power())
        throw std::invalid_argument(std::string(command) +
                                    " needs a prime-power modulus or --factor p");
    return m;
}

SymplecticSpace space_for(const ZdMatrix& m, const char* command) {
    if (m.rows() % 2 != 0 || m.rows() == 0)
        throw std::invalid_argument(std::string(command) +
                                    " needs an even, positive row count");
    return SymplecticSpace(m.rows() / 2, m.mod());
}

void cmd_reduce(CommandContext& ctx) {
    auto cert = d0(ctx.input);
    if (!(cert.L * ctx.input * cert.R == cert.D) || !is_invertible(cert.L) ||
        !is_invertible(cert.R))
        throw SelfCheckError("reduction certificate failed re-verification");
    print_matrix(ctx.text, "L", cert.L);
    print_matrix(ctx.text, "R", cert.R);
    print_matrix(ctx.text, "D", cert.D);
    ctx.text << "check: L*B*R == D, det(L) and det(R) units: ok\n";
    ctx.json["certificate"] = {{"L", matrix_json(cert.L)},
                               {"R", matrix_json(cert.R)},
                               {"D", matrix_json(cert.D)}};
}

void cmd_charseq(CommandContext& ctx) {
    auto seq = characteristic_sequence(Submodule(ctx.input));
    ctx.text << "characteristic sequence:";
    for (auto e : seq) ctx.text << ' ' << e;
    if (seq.empty()) ctx.text << " (empty)";
    ctx.text << '\n';
    ctx.json["signature"] = seq;
}

void cmd_symp_reduce(CommandContext& ctx, const CommandOptions& opts) {
    ZdMatrix b = select_factor(ctx.input, opts, "symp-reduce");
    auto sp = space_for(b, "symp-reduce");
    auto cert = symplectic_reduce(b, sp);
    if (!is_symplectic_matrix(cert.S, sp) || !(cert.S * b * cert.R == cert.form))
        throw SelfCheckError("symplectic certificate failed re-verification");
    print_matrix(ctx.text, "S", cert.S);
    print_matrix(ctx.text, "R", cert.R);
    print_matrix(ctx.text, "form", cert.form);
    ctx.text << "check: S^T J S == J, S*B*R == form: ok\n";
    if (cert.rents.empty()) {
        ctx.text << "rents: none\n";
    } else {
        ctx.text << "rents (row col pivot_below, 1-based):\n";
        for (const auto& r : cert.rents) {
            ctx.text << "  " << r.row + 1 << ' ' << r.col + 1 << ' ' << r.pivot_below
                     << '\n';
            ctx.json["rents"].push_back({{"row", r.row + 1},
                                         {"col", r.col + 1},
                                         {"pivot_below", r.pivot_below}});
        }
    }
    if (cert.early_stop) ctx.text << "stopped early at a zero rent pivot\n";
    ctx.json["certificate"] = {{"L", matrix_json(cert.S)},
                               {"R", matrix_json(cert.R)},
                               {"D", matrix_json(cert.form)}};
    ctx.json["flags"] = {{"early_stop", cert.early_stop}};
}

void cmd_classify(CommandContext& ctx) {
    auto sp = space_for(ctx.input, "classify");
    auto flags = classify(Submodule(ctx.input), sp);
    ctx.text << "isotropic:   " << (flags.isotropic ? "yes" : "no") << '\n'
             << "coisotropic: " << (flags.coisotropic ? "yes" : "no") << '\n'
             << "symplectic:  " << (flags.symplectic ? "yes" : "no") << '\n'
             << "lagrangian:  " << (flags.lagrangian ? "yes" : "no") << '\n';
    ctx.json["flags"] = {{"isotropic", flags.isotropic},
                         {"coisotropic", flags.coisotropic},
                         {"symplectic", flags.symplectic},
                         {"lagrangian", flags.lagrangian}};
}

void cmd_lagrangian(CommandContext& ctx, const CommandOptions& opts) {
    auto sp = space_for(ctx.input, "lagrangian");
    auto form = lagrangian_canonical(Submodule(ctx.input), sp);
    if (!form) {
        ctx.text << "not Lagrangian\n";
        ctx.json["flags"] = {{"lagrangian", false}};
        if (opts.require_lagrangian) ctx.exit_code = 1;
        return;
    }
    if (!is_symplectic_matrix(form->S, sp) ||
        !submodule_equal(Submodule(form->S * lagrangian_diagonal(form->signature, sp)),
                         Submodule(ctx.input)))
        throw SelfCheckError("lagrangian form failed re-verification");
    ctx.text << "signature:";
    for (auto e : form->signature) ctx.text << ' ' << e;
    ctx.text << '\n';
    print_matrix(ctx.text, "S", form->S);
    ctx.text << "check: S symplectic, S*diag regenerates the module: ok\n";
    ctx.json["flags"] = {{"lagrangian", true}};
    ctx.json["signature"] = form->signature;
    ctx.json["certificate"] = {{"L", matrix_json(form->S)},
                               {"R", nullptr},
                               {"D", matrix_json(lagrangian_diagonal(form->signature, sp))}};
}

nlohmann::json fringe_json(const FringeReport& rep) {
    nlohmann::json intervals = nlohmann::json::array();
    for (const auto& [b, e] : rep.k.intervals) intervals.push_back({b + 1, e});
    nlohmann::json out = {
        {"k_intervals", intervals},
        {"kappa", rep.k.kappa},
        {"scalar_fringe",
         rep.scalar_fringe ? nlohmann::json(*rep.scalar_fringe) : nlohmann::json()},
        {"good", rep.good},
        {"nice", rep.nice},
    };
    if (rep.pivot)
        out["pivot"] = {rep.pivot->first + 1, rep.pivot->second + 1};
    else
        out["pivot"] = nullptr;
    return out;
}

void print_fringe(std::ostringstream& out, const FringeReport& rep) {
    out << "K intervals (1-based, inclusive):";
    for (std::size_t lvl = 0; lvl < rep.k.intervals.size(); ++lvl) {
        auto [b, e] = rep.k.intervals[lvl];
        out << " K" << lvl << "=";
        if (b == e)
            out << "{}";
        else
            out << "{" << b + 1 << ".." << e << "}";
    }
    out << '\n';
    if (rep.scalar_fringe)
        out << "scalar fringe: " << *rep.scalar_fringe << '\n';
    else
        out << "scalar fringe: undefined (no unit in the Gram matrix)\n";
    out << "good: " << (rep.good ? "yes" : "no") << '\n';
    out << "nice: " << (rep.nice ? "yes" : "no") << '\n';
    if (rep.pivot)
        out << "pivot: (" << rep.pivot->first + 1 << ", " << rep.pivot->second + 1
            << ")\n";
}

void cmd_fringe(CommandContext& ctx, const CommandOptions& opts) {
    ZdMatrix b = select_factor(ctx.input, opts, "fringe");
    auto sp = space_for(b, "fringe");
    Submodule s(b);
    auto g = gram(b, sp);
    auto rep = fringe_report(g, s);
    print_matrix(ctx.text, "Gram", g.G);
    ctx.text << "discriminant: " << g.discriminant << '\n';
    print_fringe(ctx.text, rep);
    ctx.json["flags"] = fringe_json(rep);
}

void cmd_nearly_symplectic(CommandContext& ctx, const CommandOptions& opts) {
    ZdMatrix b = opts.factor ? select_factor(ctx.input, opts, "nearly-symplectic")
                             : ctx.input;
    auto sp = space_for(b, "nearly-symplectic");
    Submodule s(b);
    auto witness = nearly_symplectic_witness(s, sp);
    if (witness) {
        if (!is_symplectic_matrix(witness->basis, sp) ||
            !submodule_equal(Submodule(witness->basis * witness->diagonal), s))
            throw SelfCheckError("nearly-symplectic witness failed re-verification");
        if (opts.seed && sp.mod().is_prime_power()) {
            // randomized pivot choices must not flip the verdict
            std::mt19937_64 rng(*opts.seed);
            for (int trial = 0; trial < 8; ++trial) {
                auto outcome = d_omega(s, sp, [&](const auto& pivots) {
                    return pivots[rng() % pivots.size()];
                });
                if (!outcome.nearly_symplectic())
                    throw SelfCheckError("pivot randomization flipped the verdict");
            }
            ctx.text << "pivot-randomized self-test: ok\n";
        }
        ctx.text << "YES: nearly symplectic\n";
        print_matrix(ctx.text, "basis", witness->basis);
        print_matrix(ctx.text, "D", witness->diagonal);
        if (!witness->sigma.empty()) {
            ctx.text << "sigma (1-based):";
            for (auto x : witness->sigma) ctx.text << ' ' << x + 1;
            ctx.text << '\n';
        }
        ctx.json["flags"] = {{"nearly_symplectic", true}};
        nlohmann::json sigma = nlohmann::json::array();
        for (auto x : witness->sigma) sigma.push_back(x + 1);
        ctx.json["certificate"] = {{"L", matrix_json(witness->basis)},
                                   {"R", sigma},
                                   {"D", matrix_json(witness->diagonal)}};
    } else {
        ctx.text << "NO: not nearly symplectic\n";
        ctx.json["flags"] = {{"nearly_symplectic", false}};
        // report the failing iteration of the first refusing factor
        for (const auto& f : sp.mod().factors()) {
            ZdMatrix bp = sp.mod().is_prime_power() ? b : matrix_pi_p(b, f.prime);
            SymplecticSpace fsp(sp.n(), bp.mod());
            auto outcome = d_omega(Submodule(bp), fsp);
            if (!outcome.failure) continue;
            ctx.text << "failing factor " << f.prime << ":\n";
            print_fringe(ctx.text, *outcome.failure);
            ctx.json["flags"]["failure"] = fringe_json(*outcome.failure);
            ctx.json["flags"]["failing_factor"] = f.prime;
            break;
        }
    }
}

}  // namespace

CommandResult run_command(const std::string& command, const MatrixDocument& doc,
                          const CommandOptions& opts) {
    CommandContext ctx(command, doc);
    if (command == "reduce") {
        cmd_reduce(ctx);
    } else if (command == "charseq") {
        cmd_charseq(ctx);
    } else if (command == "symp-reduce") {
        cmd_symp_reduce(ctx, opts);
    } else if (command == "classify") {
        cmd_classify(ctx);
    } else if (command == "lagrangian") {
        cmd_lagrangian(ctx, opts);
    } else if (command == "fringe") {
        cmd_fringe(ctx, opts);
    } else if (command == "nearly-symplectic") {
        cmd_nearly_symplectic(ctx, opts);
    } else {
        throw std::invalid_argument("unknown command: " + command);
    }
    return {ctx.exit_code, ctx.text.str(), std::move(ctx.json)};
}

}  // namespace zdred
