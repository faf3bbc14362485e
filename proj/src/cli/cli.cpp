#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sigreg/cli.hpp"
#include "sigreg/errors.hpp"

namespace sigreg::cli {

namespace {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Json load_config(const std::string& path) {
    if (path.empty()) return Json::object();
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("config is not valid JSON: ") + e.what());
    }
}

void write_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError("cannot write '" + p.string() + "'");
    out << content;
    if (!out) throw IoError("write failed for '" + p.string() + "'");
}

std::string utc_timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"Sign-regularity certification and unimodality classification of series and integral ratios"};
    app.require_subcommand(1);
    std::string config_path, out_dir = ".", format = "json";
    std::optional<std::uint64_t> seed;
    for (const std::string& name : command_names()) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--format", format, "json, csv or both")->check(CLI::IsMember({"json", "csv", "both"}));
        sub->add_option("--seed", seed, "seed for randomized minor subsets and draws");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }
    const std::string name = app.get_subcommands().front()->get_name();

    try {
        const Json config = load_config(config_path);
        const CommandOutput out = run_command(name, config, seed);
        std::filesystem::create_directories(out_dir);
        const std::filesystem::path dir(out_dir);
        if (format != "csv") write_file(dir / (name + ".json"), out.report.dump(2) + "\n");
        if (format != "json") write_file(dir / (name + ".csv"), out.csv);
        Json meta = make_document("meta");
        meta["command"] = name;
        meta["config_path"] = config_path;
        meta["format"] = format;
        meta["exit_code"] = out.exit_code;
        meta["generated_at"] = utc_timestamp();
        write_file(dir / (name + ".meta.json"), meta.dump(2) + "\n");
        std::cout << name << ": exit " << out.exit_code << ", wrote " << (dir / name).string() << ".*\n";
        return out.exit_code;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const Json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }
}

}  // namespace sigreg::cli
