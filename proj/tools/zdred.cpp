// Command-line front end: parses a matrix document from a file or stdin,
// dispatches to the reduction/classification commands and prints the
// verified certificate in text or JSON form.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "zdred/io.hpp"

namespace {

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) throw zdred::ParseError(0, "cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact matrix reduction over Z_d"};
    app.require_subcommand(1);

    std::string input_path;
    zdred::CommandOptions opts;
    std::int64_t factor = 0;
    std::uint64_t seed = 0;

    const char* names[] = {"reduce",  "charseq",    "symp-reduce",      "classify",
                           "lagrangian", "fringe", "nearly-symplectic"};
    const char* descs[] = {
        "diagonalise a basis matrix with a (L, R, D) certificate",
        "print the characteristic sequence of the generated submodule",
        "symplectic staircase reduction with rent tracking",
        "isotropy classification of the generated submodule",
        "Lagrangian canonical form: signature and symplectic witness",
        "Gram matrix and fringe report of the column family",
        "symplectic diagonalisability verdict with witness",
    };
    for (std::size_t i = 0; i < std::size(names); ++i) {
        auto* sub = app.add_subcommand(names[i], descs[i]);
        sub->add_option("input", input_path, "matrix document (default: stdin)");
        sub->add_flag("--json", opts.json, "emit the structured JSON form");
        auto* fopt = sub->add_option("--factor", factor, "restrict to the Chinese factor p");
        auto* sopt = sub->add_option("--seed", seed, "seed for randomized self-tests");
        if (std::string(names[i]) == "lagrangian")
            sub->add_flag("--require-lagrangian", opts.require_lagrangian,
                          "exit 1 when the module is not Lagrangian");
        sub->callback([&, fopt, sopt]() {
            if (!fopt->empty()) opts.factor = factor;
            if (!sopt->empty()) opts.seed = seed;
        });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        auto* sub = app.get_subcommands().front();
        auto doc = zdred::parse_document(read_input(input_path));
        auto result = zdred::run_command(sub->get_name(), doc, opts);
        if (opts.json)
            std::cout << result.json.dump(2) << '\n';
        else
            std::cout << result.text;
        return result.exit_code;
    } catch (const zdred::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const zdred::SelfCheckError& e) {
        std::cerr << "self-check failure: " << e.what() << '\n';
        return 3;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
