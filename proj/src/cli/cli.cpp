#include "ods/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "ods/codec.hpp"
#include "ods/error.hpp"
#include "ods/inference.hpp"
#include "ods/jsonld.hpp"
#include "ods/policy.hpp"
#include "ods/service.hpp"
#include "ods/validation.hpp"

namespace ods {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw Error("cannot read " + path);
    return buf.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file || !(file << text) || !file.flush()) throw Error("cannot write " + path);
}

std::string percent(double fraction) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(0) << fraction * 100.0 << '%';
    return s.str();
}

void print_report(const Datasheet& sheet, const ValidationReport& report, std::ostream& out) {
    std::size_t errors = 0;
    std::size_t warnings = 0;
    for (const auto& i : report.issues) {
        errors += i.severity == Severity::Error;
        warnings += i.severity == Severity::Warning;
    }
    out << sheet.name << ": " << (report.valid ? "valid" : "INVALID") << " (" << errors << " errors, " << warnings
        << " warnings)\n";
    out << "RAI completeness: " << percent(report.overall) << '\n';
    for (auto section : kRaiSections) {
        out << "  " << std::left << std::setw(12) << section << ' ' << percent(report.completeness.find(section)->second) << '\n';
    }
    for (const auto& i : report.issues) {
        out << to_string(i.severity) << ' ' << (i.pointer.empty() ? "/" : i.pointer) << ' ' << i.code << ": "
            << i.message << '\n';
    }
}

void print_verdict(const Verdict& verdict, std::ostream& out) {
    out << "decision: " << to_string(verdict.decision) << '\n';
    for (const auto& r : verdict.ruleResults) {
        out << "  [" << (r.passed ? "pass" : "FAIL") << "] " << r.id;
        if (!r.passed) out << " -> " << to_string(r.action);
        if (!r.passed && !r.message.empty()) out << ": " << r.message;
        out << '\n';
    }
}

ExitCode exit_for(Decision d) {
    switch (d) {
        case Decision::Accept: return ExitCode::Ok;
        case Decision::Review: return ExitCode::PolicyReview;
        case Decision::Reject: return ExitCode::PolicyReject;
    }
    return ExitCode::Ok;
}

struct Options {
    std::string output;
    // init
    std::string name;
    std::string title;
    // infer
    std::vector<std::string> files;
    std::string merge;
    // validate / evaluate / convert
    std::string datasheet;
    std::string policy;
    bool json = false;
    std::string to;
    // serve
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string assets;
};

ExitCode cmd_init(const Options& o, std::ostream& out) {
    const Datasheet sheet = new_template(o.name, o.title.empty() ? o.name : o.title);
    write_output(o.output, serialize_datasheet(sheet), out);
    return ExitCode::Ok;
}

ExitCode cmd_infer(const Options& o, std::ostream& out, std::ostream& err) {
    const InferenceConfig cfg;
    std::vector<std::future<ResourceInference>> jobs;
    jobs.reserve(o.files.size());
    for (const auto& file : o.files) {
        jobs.push_back(std::async(std::launch::async, [&cfg, file] {
            const std::string bytes = read_file(file);
            return infer_resource(file, bytes, cfg);
        }));
    }
    std::vector<Resource> inferred;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        ResourceInference r = jobs[i].get();
        for (const auto& w : r.warnings) err << "warning: " << o.files[i] << ": " << w << '\n';
        inferred.push_back(std::move(r.resource));
    }

    Datasheet base;
    if (!o.merge.empty()) {
        base = parse_datasheet(read_file(o.merge));
    } else {
        const std::string name = o.name.empty() ? slug_from_file_name(o.files.front()) : o.name;
        base = new_template(name, o.title.empty() ? name : o.title);
    }
    write_output(o.output, serialize_datasheet(merge_inferred(std::move(base), inferred)), out);
    return ExitCode::Ok;
}

ExitCode cmd_validate(const Options& o, std::ostream& out) {
    const Datasheet sheet = parse_datasheet(read_file(o.datasheet));
    const ValidationReport report = validate_datasheet(sheet);
    if (o.json) {
        out << serialize_report(report);
    } else {
        print_report(sheet, report, out);
    }
    return report.valid ? ExitCode::Ok : ExitCode::ValidationErrors;
}

ExitCode cmd_evaluate(const Options& o, std::ostream& out) {
    std::string policy_path = o.policy;
    if (policy_path.empty()) {
        if (const char* env = std::getenv("ODS_POLICY")) policy_path = env;
    }
    if (policy_path.empty()) throw Error("no policy given: pass --policy or set ODS_POLICY");
    const Datasheet sheet = parse_datasheet(read_file(o.datasheet));
    const Policy policy = parse_policy(read_file(policy_path));
    const Verdict verdict = evaluate_policy(sheet, policy);
    if (o.json) {
        out << serialize_verdict(verdict);
    } else {
        print_verdict(verdict, out);
    }
    return exit_for(verdict.decision);
}

ExitCode cmd_convert(const Options& o, std::ostream& out, std::ostream& err) {
    const Datasheet sheet = parse_datasheet(read_file(o.datasheet));
    const ValidationReport report = validate_datasheet(sheet);
    if (!report.valid) {
        err << "error: " << o.datasheet << " is not valid; fix these before converting:\n";
        for (const auto& i : report.issues) {
            if (i.severity == Severity::Error) err << "  " << i.pointer << ' ' << i.code << ": " << i.message << '\n';
        }
        return ExitCode::ValidationErrors;
    }
    write_output(o.output, to_jsonld(sheet).serialize(), out);
    return ExitCode::Ok;
}

ExitCode cmd_serve(const Options& o, std::ostream& out) {
    ServiceConfig cfg;
    cfg.host = o.host;
    cfg.port = o.port;
    std::string policy_path = o.policy;
    if (policy_path.empty()) {
        if (const char* env = std::getenv("ODS_POLICY")) policy_path = env;
    }
    if (!policy_path.empty()) cfg.policy = parse_policy(read_file(policy_path));
    if (!o.assets.empty()) cfg.assetsDir = o.assets;
    Server server(std::move(cfg));
    const int port = server.bind();
    out << "serving on http://" << o.host << ':' << port << '\n' << std::flush;
    server.listen();
    return ExitCode::Ok;
}

}  // namespace

ExitCode run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Open Datasheets: create, infer, validate, screen and export dataset datasheets", "ods"};
    app.require_subcommand(1);
    Options o;

    auto* init = app.add_subcommand("init", "Write a draft datasheet template");
    init->add_option("name", o.name, "Datasheet name (lowercase slug)")->required();
    init->add_option("--title", o.title, "Human-readable title (defaults to the name)");
    init->add_option("-o,--output", o.output, "Output file (default: standard output)");

    auto* infer = app.add_subcommand("infer", "Infer resources from data files into a datasheet");
    infer->add_option("files", o.files, "Data files (csv, tsv, json, jsonl, other)")->required();
    infer->add_option("-o,--output", o.output, "Output file (default: standard output)");
    infer->add_option("--merge", o.merge, "Existing datasheet to merge the inferred resources into");
    infer->add_option("--name", o.name, "Name for a new datasheet (default: first file's stem)");
    infer->add_option("--title", o.title, "Title for a new datasheet");

    auto* validate = app.add_subcommand("validate", "Check a datasheet and score RAI completeness");
    validate->add_option("datasheet", o.datasheet, "Datasheet JSON file")->required();
    validate->add_flag("--json", o.json, "Print the machine-readable report");

    auto* evaluate = app.add_subcommand("evaluate", "Screen a datasheet against a policy");
    evaluate->add_option("datasheet", o.datasheet, "Datasheet JSON file")->required();
    evaluate->add_option("--policy", o.policy, "Policy JSON file (fallback: $ODS_POLICY)");
    evaluate->add_flag("--json", o.json, "Print the machine-readable verdict");

    auto* convert = app.add_subcommand("convert", "Export a datasheet to another format");
    convert->add_option("datasheet", o.datasheet, "Datasheet JSON file")->required();
    convert->add_option("--to", o.to, "Target format")->required()->check(CLI::IsMember({"jsonld"}));
    convert->add_option("-o,--output", o.output, "Output file (default: standard output)");

    auto* serve = app.add_subcommand("serve", "Run the local authoring service");
    serve->add_option("--port", o.port, "TCP port (0 picks a free one)")->check(CLI::Range(0, 65535));
    serve->add_option("--host", o.host, "Bind address");
    serve->add_option("--policy", o.policy, "Default policy for /api/v1/evaluate (fallback: $ODS_POLICY)");
    serve->add_option("--assets", o.assets, "Directory with the wizard's static files");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ExitCode::Ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ExitCode::Ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return ExitCode::OperationalError;
    }

    try {
        if (*init) return cmd_init(o, out);
        if (*infer) return cmd_infer(o, out, err);
        if (*validate) return cmd_validate(o, out);
        if (*evaluate) return cmd_evaluate(o, out);
        if (*convert) return cmd_convert(o, out, err);
        if (*serve) return cmd_serve(o, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::OperationalError;
    }
    return ExitCode::OperationalError;
}

}  // namespace ods
