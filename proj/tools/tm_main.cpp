// tm: command-line front end for the TM model toolchain.
//
// Subcommands: check, simplify, render, simulate, narrate, coverage.
// Exit codes: 0 success, 1 validation/semantic errors, 2 usage error,
// 3 I/O error. Diagnostics go to stderr, artifacts to stdout or -o PATH.

#include "tmc/diagnostics.hpp"
#include "tmc/dynamics.hpp"
#include "tmc/errors.hpp"
#include "tmc/model.hpp"
#include "tmc/narrate.hpp"
#include "tmc/parser.hpp"
#include "tmc/printer.hpp"
#include "tmc/render.hpp"
#include "tmc/transform.hpp"
#include "tmc/validator.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _WIN32
#include <io.h>
#define TM_ISATTY _isatty
#define TM_FILENO _fileno
#else
#include <unistd.h>
#define TM_ISATTY isatty
#define TM_FILENO fileno
#endif

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitSemantic = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

bool use_color() {
    if (const char* env = std::getenv("TM_COLOR")) {
        return std::string_view(env) == "1";
    }
    return TM_ISATTY(TM_FILENO(stderr)) != 0;
}

void print_diagnostics(const std::vector<tmc::Diagnostic>& diags, const std::string& file) {
    bool color = use_color();
    for (const auto& d : diags) {
        std::string line = tmc::format_diagnostic(d, file);
        if (color) {
            const char* tint = d.severity == tmc::Severity::Error ? "\033[31m" : "\033[33m";
            auto space = line.find(' ');
            line = std::string(tint) + line.substr(0, space) + "\033[0m" + line.substr(space);
        }
        std::cerr << line << "\n";
    }
}

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

int write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return kExitOk;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return kExitIo;
    }
    out << content;
    return kExitOk;
}

// Parses one file; on parse errors prints them and reports the exit code.
int parse_file(const std::string& path, std::optional<tmc::Document>& doc) {
    auto text = read_file(path);
    if (!text) {
        std::cerr << "error: cannot read '" << path << "'\n";
        return kExitIo;
    }
    tmc::ParseResult result = tmc::parse(*text);
    print_diagnostics(result.diagnostics, path);
    if (!result.ok()) return kExitSemantic;
    doc = std::move(result.document);
    return kExitOk;
}

// Parse plus semantic gate for the artifact-producing commands: the model
// must be valid in Strict or Simplified mode, and dynamic declarations must
// resolve. Strict-mode diagnostics are shown when both modes fail.
int load_checked(const std::string& path, std::optional<tmc::Document>& doc) {
    int rc = parse_file(path, doc);
    if (rc != kExitOk) return rc;

    auto strict = tmc::check_static(*doc, tmc::Mode::Strict);
    if (tmc::has_errors(strict)) {
        auto simplified = tmc::check_static(*doc, tmc::Mode::Simplified);
        if (tmc::has_errors(simplified)) {
            print_diagnostics(strict, path);
            return kExitSemantic;
        }
    }
    auto dynamic = tmc::check_dynamic(*doc);
    print_diagnostics(dynamic, path);
    if (tmc::has_errors(dynamic)) return kExitSemantic;
    return kExitOk;
}

int check_one(const std::string& path, tmc::Mode mode) {
    std::optional<tmc::Document> doc;
    int rc = parse_file(path, doc);
    if (rc != kExitOk) return rc;
    auto diags = tmc::check_document(*doc, mode);
    print_diagnostics(diags, path);
    return tmc::has_errors(diags) ? kExitSemantic : kExitOk;
}

int cmd_check(const std::string& target, tmc::Mode mode) {
    std::error_code ec;
    if (fs::is_directory(target, ec)) {
        std::vector<std::string> files;
        for (const auto& entry : fs::directory_iterator(target, ec)) {
            if (entry.is_regular_file() && entry.path().extension() == ".tm") {
                files.push_back(entry.path().string());
            }
        }
        if (ec) {
            std::cerr << "error: cannot read directory '" << target << "'\n";
            return kExitIo;
        }
        std::sort(files.begin(), files.end());
        int worst = kExitOk;
        for (const auto& file : files) worst = std::max(worst, check_one(file, mode));
        return worst;
    }
    return check_one(target, mode);
}

int cmd_simplify(const std::string& path, const std::string& out_path) {
    std::optional<tmc::Document> doc;
    int rc = parse_file(path, doc);
    if (rc != kExitOk) return rc;
    auto strict = tmc::check_static(*doc, tmc::Mode::Strict);
    print_diagnostics(strict, path);
    if (tmc::has_errors(strict)) return kExitSemantic;

    try {
        tmc::SimplifyResult result = tmc::simplify_level1(*doc);
        return write_output(out_path, tmc::print_canonical(result.document));
    } catch (const tmc::DanglingChainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSemantic;
    }
}

int cmd_render(const std::string& path, const std::string& view, const std::string& format,
               bool implicit, const std::string& events, const std::string& out_path) {
    std::optional<tmc::Document> doc;
    int rc = load_checked(path, doc);
    if (rc != kExitOk) return rc;

    tmc::RenderOptions opts;
    if (view == "static") {
        opts.view = tmc::RenderView::Static;
    } else if (view == "dynamic") {
        opts.view = tmc::RenderView::Dynamic;
    } else {
        opts.view = tmc::RenderView::Chronology;
    }
    opts.format = format == "svg" ? tmc::RenderFormat::Svg : tmc::RenderFormat::Dot;
    opts.implicit_notation = implicit;
    if (!events.empty()) {
        std::set<std::string> filter;
        for (const auto& id : tmc::parse_trace(events)) filter.insert(id);
        opts.event_filter = std::move(filter);
    }

    try {
        std::string artifact = opts.format == tmc::RenderFormat::Svg
                                   ? tmc::to_svg(*doc, opts)
                                   : tmc::to_dot(*doc, opts);
        return write_output(out_path, artifact);
    } catch (const tmc::ViewError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSemantic;
    }
}

// Event ids ordered short-first then lexicographic, so E8 prints before E14.
std::vector<std::string> display_order(const std::set<std::string>& ids) {
    std::vector<std::string> out(ids.begin(), ids.end());
    std::sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

int cmd_simulate(const std::string& path, const std::string& trace_text,
                 bool enumerate, int max_loop, int max_traces,
                 bool have_next, const std::string& next_text) {
    std::optional<tmc::Document> doc;
    int rc = load_checked(path, doc);
    if (rc != kExitOk) return rc;

    try {
        if (!trace_text.empty()) {
            tmc::Trace trace = tmc::parse_trace(trace_text);
            if (tmc::accepts_trace(*doc, trace)) {
                std::cout << "ACCEPTED\n";
                return kExitOk;
            }
            std::cout << "REJECTED after " << tmc::longest_accepted_prefix(*doc, trace)
                      << " events\n";
            return kExitSemantic;
        }
        if (enumerate) {
            tmc::EnumerationResult result = tmc::enumerate_traces(*doc, max_loop, max_traces);
            for (const auto& trace : result.traces) {
                std::cout << tmc::format_trace(trace) << "\n";
            }
            if (result.truncated) {
                std::cerr << "warning: enumeration truncated at " << max_traces
                          << " traces\n";
            }
            return kExitOk;
        }
        (void)have_next;  // --next with an empty prefix asks for the first events
        tmc::Trace prefix = tmc::parse_trace(next_text);
        auto next = tmc::next_events(*doc, prefix);
        bool first = true;
        for (const auto& id : display_order(next)) {
            if (!first) std::cout << ",";
            std::cout << id;
            first = false;
        }
        std::cout << "\n";
        return kExitOk;
    } catch (const tmc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSemantic;
    }
}

int cmd_narrate(const std::string& path) {
    std::optional<tmc::Document> doc;
    int rc = load_checked(path, doc);
    if (rc != kExitOk) return rc;
    try {
        std::cout << tmc::narrate_chronology(*doc) << "\n";
        return kExitOk;
    } catch (const tmc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSemantic;
    }
}

int cmd_coverage(const std::string& path) {
    std::optional<tmc::Document> doc;
    int rc = load_checked(path, doc);
    if (rc != kExitOk) return rc;
    if (!doc->source) {
        std::cerr << "error: model declares no source text\n";
        return kExitSemantic;
    }
    fs::path source_path = fs::path(path).parent_path() / doc->source->path;
    auto text = read_file(source_path.string());
    if (!text) {
        std::cerr << "error: cannot read '" << source_path.string() << "'\n";
        return kExitIo;
    }
    tmc::CoverageReport report = tmc::coverage_report(*text, doc->annotations);
    print_diagnostics(report.warnings, path);
    std::cout << tmc::format_coverage(report);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thinging Machine model toolchain"};
    app.require_subcommand(1);

    std::string file;
    std::string mode_name = "strict";
    std::string out_path;
    std::string view;
    std::string format;
    std::string events;
    std::string trace_text;
    std::string next_text;
    bool implicit = false;
    bool enumerate = false;
    int max_loop = 2;
    int max_traces = 1000;

    auto* check = app.add_subcommand("check", "Parse and validate a model (or directory)");
    check->add_option("file", file, "Model file or directory")->required();
    check->add_option("--mode", mode_name, "strict or simplified")
        ->check(CLI::IsMember({"strict", "simplified"}));

    auto* simplify = app.add_subcommand("simplify", "Level-1 elision to canonical DSL");
    simplify->add_option("file", file, "Model file")->required();
    simplify->add_option("-o,--output", out_path, "Write to file instead of stdout");

    auto* render = app.add_subcommand("render", "Emit a DOT or SVG diagram");
    render->add_option("file", file, "Model file")->required();
    render->add_option("--view", view, "static, dynamic or chronology")
        ->required()
        ->check(CLI::IsMember({"static", "dynamic", "chronology"}));
    render->add_option("--format", format, "dot or svg")
        ->required()
        ->check(CLI::IsMember({"dot", "svg"}));
    render->add_flag("--implicit", implicit, "Level-2 implicit create/process notation");
    render->add_option("--events", events, "Comma-separated event filter (dynamic view)");
    render->add_option("-o,--output", out_path, "Write to file instead of stdout");

    auto* simulate = app.add_subcommand("simulate", "Query the chronology of events");
    simulate->add_option("file", file, "Model file")->required();
    auto* trace_opt = simulate->add_option("--trace", trace_text, "Trace to test, e.g. E1,E2");
    auto* enum_opt = simulate->add_flag("--enumerate", enumerate, "List accepted traces");
    auto* next_opt =
        simulate->add_option("--next", next_text, "Prefix to continue (may be empty)");
    simulate->add_option("--max-loop", max_loop, "Loop unrollings for --enumerate")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--max-traces", max_traces, "Cap for --enumerate")
        ->check(CLI::PositiveNumber);
    trace_opt->excludes(enum_opt)->excludes(next_opt);
    enum_opt->excludes(next_opt);

    auto* narrate = app.add_subcommand("narrate", "Narrative text of the chronology");
    narrate->add_option("file", file, "Model file")->required();

    auto* coverage = app.add_subcommand("coverage", "Domain-text coverage report");
    coverage->add_option("file", file, "Model file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        std::cerr << "run 'tm --help' for usage\n";
        return kExitUsage;
    }

    if (check->parsed()) {
        tmc::Mode mode = mode_name == "simplified" ? tmc::Mode::Simplified : tmc::Mode::Strict;
        return cmd_check(file, mode);
    }
    if (simplify->parsed()) return cmd_simplify(file, out_path);
    if (render->parsed()) return cmd_render(file, view, format, implicit, events, out_path);
    if (simulate->parsed()) {
        if (trace_text.empty() && !enumerate && next_opt->count() == 0) {
            std::cerr << "simulate requires one of --trace, --enumerate or --next\n";
            std::cerr << "run 'tm simulate --help' for usage\n";
            return kExitUsage;
        }
        return cmd_simulate(file, trace_text, enumerate, max_loop, max_traces,
                            next_opt->count() > 0, next_text);
    }
    if (narrate->parsed()) return cmd_narrate(file);
    return cmd_coverage(file);
}
