#include "cli.h"

#include <unistd.h>

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "origin/builtins.h"
#include "origin/device.h"
#include "origin/error.h"
#include "origin/interpreter.h"
#include "origin/lexer.h"
#include "origin/net.h"
#include "origin/parser.h"
#include "origin/repl.h"

namespace origin::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw UsageError("cannot read " + path);
    }
    std::ostringstream ss;
    ss << file.rdbuf();
    return ss.str();
}

struct DeviceOptions {
    std::string trace_path;
    std::string wifi_path;
    std::string transport = "mock";
};

struct RunConfig {
    std::string program_path;
    DeviceOptions device;
    std::string events_out;
    std::uint64_t max_steps = ExecutionBudget{}.max_statements;
    std::optional<std::int64_t> max_virtual_ms;
    bool realtime = false;
};

DeviceState make_device(const DeviceOptions& opts) {
    SensorTrace trace;
    std::vector<WifiNetwork> networks;
    try {
        if (!opts.trace_path.empty()) {
            trace = load_trace(read_file(opts.trace_path));
        }
        if (!opts.wifi_path.empty()) {
            networks = load_wifi_config(read_file(opts.wifi_path));
        }
    } catch (const FormatError& e) {
        throw UsageError(e.describe());
    }
    return DeviceState(std::move(trace), std::move(networks));
}

// mock | mock:<script.json> | real
std::unique_ptr<Transport> make_transport(const std::string& choice) {
    if (choice == "real") {
        return std::make_unique<HttpTransport>();
    }
    if (choice == "mock") {
        return std::make_unique<MockTransport>();
    }
    if (choice.rfind("mock:", 0) == 0) {
        try {
            return std::make_unique<MockTransport>(parse_transport_script(read_file(choice.substr(5))));
        } catch (const FormatError& e) {
            throw UsageError(e.describe() + " (in " + choice.substr(5) + ")");
        }
    }
    throw UsageError("--transport must be mock, mock:<script.json> or real");
}

int exit_code_for(const OriginError& e) {
    switch (e.kind()) {
        case ErrorKind::LexError:
        case ErrorKind::ParseError:
            return kExitSyntaxError;
        case ErrorKind::BudgetExceeded:
            return kExitBudgetExceeded;
        case ErrorKind::FormatError:
            return kExitUsage;
        default:
            return kExitRuntimeError;
    }
}

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const std::string source = read_file(config.program_path);
    Program program;
    try {
        program = parse_source(source);
    } catch (const OriginError& e) {
        err << "origin: " << e.describe() << '\n';
        return kExitSyntaxError;
    }

    DeviceState device = make_device(config.device);
    std::unique_ptr<Transport> transport = make_transport(config.device.transport);

    RunHooks hooks;
    hooks.console = [&out](const std::string& text) { out << text << '\n' << std::flush; };
    if (config.realtime) {
        hooks.sleep = [](std::int64_t ms) { std::this_thread::sleep_for(std::chrono::milliseconds(ms)); };
    }
    ExecutionBudget budget{config.max_steps, config.max_virtual_ms};
    RunOutcome outcome = run(program, device, BuiltinRegistry::standard(), *transport, budget, hooks);

    if (!config.events_out.empty()) {
        const std::string jsonl = serialize_events(outcome.events);
        if (config.events_out == "-") {
            out << jsonl << std::flush;
        } else {
            std::ofstream file(config.events_out, std::ios::binary | std::ios::trunc);
            if (!file) {
                err << "origin: cannot write " << config.events_out << '\n';
                return kExitUsage;
            }
            file << jsonl;
        }
    }

    if (outcome.error) {
        err << "origin: " << outcome.error->describe() << '\n';
        return exit_code_for(*outcome.error);
    }
    return kExitOk;
}

int cmd_tokens(const std::string& path, std::ostream& out, std::ostream& err) {
    try {
        out << dump_tokens(tokenize(read_file(path)));
    } catch (const LexError& e) {
        err << "origin: " << e.describe() << '\n';
        return kExitSyntaxError;
    }
    return kExitOk;
}

int cmd_ast(const std::string& path, std::ostream& out, std::ostream& err) {
    try {
        out << dump_ast(parse_source(read_file(path))) << '\n';
    } catch (const OriginError& e) {
        err << "origin: " << e.describe() << '\n';
        return kExitSyntaxError;
    }
    return kExitOk;
}

int cmd_repl(const DeviceOptions& opts, std::uint64_t max_steps, std::istream& in, std::ostream& out,
             std::ostream& err) {
    DeviceState device = make_device(opts);
    std::unique_ptr<Transport> transport = make_transport(opts.transport);
    BuiltinRegistry registry = BuiltinRegistry::standard();
    ReplSession session(device, *transport, registry, out, err, ExecutionBudget{max_steps, std::nullopt});
    const bool prompts = &in == &std::cin && isatty(STDIN_FILENO);
    run_repl(session, in, out, prompts);
    return kExitOk;
}

void add_device_flags(CLI::App* cmd, DeviceOptions& opts) {
    cmd->add_option("--trace", opts.trace_path, "Sensor trace (JSONL)");
    cmd->add_option("--wifi", opts.wifi_path, "Known WiFi networks (JSON)");
    cmd->add_option("--transport", opts.transport, "HTTP transport: mock, mock:<script.json> or real")
        ->capture_default_str();
}

} // namespace

int main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Origin interpreter running against a virtual Android device", "origin"};
    app.require_subcommand(1);

    RunConfig run_cfg;
    auto* run_cmd = app.add_subcommand("run", "Run an Origin program");
    run_cmd->add_option("program", run_cfg.program_path, "Program file (.origin)")->required();
    add_device_flags(run_cmd, run_cfg.device);
    run_cmd->add_option("--events-out", run_cfg.events_out, "Write the event log as JSONL ('-' for stdout)");
    run_cmd->add_option("--max-steps", run_cfg.max_steps, "Statement budget")
        ->envname("ORIGIN_MAX_STEPS")
        ->capture_default_str();
    run_cmd->add_option("--max-virtual-ms", run_cfg.max_virtual_ms, "Virtual time budget in milliseconds");
    run_cmd->add_flag("--realtime", run_cfg.realtime, "Sleep for real during wait()");

    std::string tokens_path;
    auto* tokens_cmd = app.add_subcommand("tokens", "Dump the token stream");
    tokens_cmd->add_option("file", tokens_path)->required();

    std::string ast_path;
    auto* ast_cmd = app.add_subcommand("ast", "Dump the syntax tree as JSON");
    ast_cmd->add_option("file", ast_path)->required();

    DeviceOptions repl_opts;
    std::uint64_t repl_steps = ExecutionBudget{}.max_statements;
    auto* repl_cmd = app.add_subcommand("repl", "Interactive session");
    add_device_flags(repl_cmd, repl_opts);
    repl_cmd->add_option("--max-steps", repl_steps, "Statement budget per input")->envname("ORIGIN_MAX_STEPS");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*run_cmd) {
            return cmd_run(run_cfg, out, err);
        }
        if (*tokens_cmd) {
            return cmd_tokens(tokens_path, out, err);
        }
        if (*ast_cmd) {
            return cmd_ast(ast_path, out, err);
        }
        if (*repl_cmd) {
            return cmd_repl(repl_opts, repl_steps, in, out, err);
        }
    } catch (const UsageError& e) {
        err << "origin: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace origin::cli
