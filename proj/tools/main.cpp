#include <CLI11.hpp>

#include <iostream>

#include "defq/corpus.hpp"
#include "defq/parallel.hpp"
#include "defq/report.hpp"

namespace {

using namespace defq;

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2 };

void emit(const ojson& report, const std::string& format) {
    if (format == "json")
        std::cout << report.dump(2) << "\n";
    else
        std::cout << render_text(report);
}

int cmd_validate(const std::string& path, const std::string& format) {
    const ProblemSpec spec = load_spec_file(path);
    const ValidationReport algebra_rep = validate(spec.algebra);
    std::optional<ValidationReport> contraction_rep;
    if (spec.user_contraction)
        contraction_rep = validate_contraction(*spec.user_contraction);
    const ojson report = validate_report(spec, algebra_rep, contraction_rep);
    emit(report, format);
    return report.at("ok").get<bool>() ? kOk : kCheckFailed;
}

int cmd_deform(const std::string& path, int order, const std::string& format) {
    const ProblemSpec spec = load_spec_file(path);
    const ValidationReport algebra_rep = validate(spec.algebra);
    if (!algebra_rep.ok()) {
        emit(validate_report(spec, algebra_rep, std::nullopt), format);
        return kCheckFailed;
    }
    const int n = order > 0 ? order : spec.max_degree;
    const DeformRun run = run_deform(spec, n);
    const ojson report = deform_report(spec, run);
    emit(report, format);
    return report.at("ok").get<bool>() ? kOk : kCheckFailed;
}

int cmd_kuranishi(const std::string& path, int order, const std::string& format) {
    const ProblemSpec spec = load_spec_file(path);
    const ValidationReport algebra_rep = validate(spec.algebra);
    if (!algebra_rep.ok()) {
        emit(validate_report(spec, algebra_rep, std::nullopt), format);
        return kCheckFailed;
    }
    const int n = order > 0 ? order : spec.max_degree;
    const KuranishiRun run = run_kuranishi(spec, n);
    const ojson report = kuranishi_report(spec, run);
    emit(report, format);
    return report.at("ok").get<bool>() ? kOk : kCheckFailed;
}

int cmd_examples(const std::string& action, const std::string& name) {
    if (action == "list") {
        for (const auto& entry : bundled_corpus())
            std::cout << entry.name << "\n";
        return kOk;
    }
    for (const auto& entry : bundled_corpus()) {
        if (entry.name == name) {
            std::cout << entry.text;
            return kOk;
        }
    }
    std::cerr << "error: no bundled spec named '" << name << "'\n";
    return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact deformation engine: twisting cochain, perturbed coalgebra "
                 "differential, and formal tangent-space data for non-positive "
                 "differential graded Lie algebras over Q"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "Worker threads for the parallel kernels")
        ->check(CLI::PositiveNumber);

    std::string file, format = "text", name;
    int order = 0;

    auto* validate_cmd = app.add_subcommand("validate", "Check the algebra axioms");
    validate_cmd->add_option("file", file)->required();
    validate_cmd->add_option("--output", format)->check(CLI::IsMember({"text", "json"}));

    auto* deform_cmd =
        app.add_subcommand("deform", "Compute the twisting cochain and the perturbation");
    deform_cmd->add_option("file", file)->required();
    deform_cmd->add_option("--max-degree", order, "Truncation order (default from the spec)")
        ->check(CLI::PositiveNumber);
    deform_cmd->add_option("--output", format)->check(CLI::IsMember({"text", "json"}));

    auto* kuranishi_cmd =
        app.add_subcommand("kuranishi", "Two-term analysis: maps, inverse, obstructions");
    kuranishi_cmd->add_option("file", file)->required();
    kuranishi_cmd->add_option("--max-degree", order,
                              "Truncation order (default from the spec)")
        ->check(CLI::PositiveNumber);
    kuranishi_cmd->add_option("--output", format)->check(CLI::IsMember({"text", "json"}));

    auto* examples_cmd = app.add_subcommand("examples", "List or dump the bundled specs");
    std::string action;
    examples_cmd->add_option("action", action)->required()->check(
        CLI::IsMember({"list", "dump"}));
    examples_cmd->add_option("name", name);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }
    par::set_max_threads(threads);

    try {
        if (validate_cmd->parsed())
            return cmd_validate(file, format);
        if (deform_cmd->parsed())
            return cmd_deform(file, order, format);
        if (kuranishi_cmd->parsed())
            return cmd_kuranishi(file, order, format);
        if (examples_cmd->parsed()) {
            if (action == "dump" && name.empty()) {
                std::cerr << "error: 'examples dump' needs a name\n";
                return kUsage;
            }
            return cmd_examples(action, name);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCheckFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
