#include <fstream>
#include <iostream>
#include <sstream>

#include "cli.hpp"
#include "dioph/errors.hpp"

namespace cli {

Output::Output(std::ostream& os, Format format, std::string command, json config, int digits)
    : os_(os), format_(format), command_(std::move(command)), config_(std::move(config)), digits_(digits) {}

void Output::preamble() {
  if (started_) return;
  started_ = true;
  if (format_ == Format::Csv) {
    os_ << "# schema: " << kSchema << "\n";
    os_ << "# config: " << json{{"command", command_}, {"config", config_}}.dump() << "\n";
  }
}

void Output::record(const std::string& kind, json fields) {
  if (format_ == Format::Csv) return;
  json r = {{"schema", kSchema}, {"command", command_}, {"record", kind}, {"config", config_}};
  r.update(fields);
  os_ << r.dump() << "\n";
}

void Output::csv_header(const std::vector<std::string>& columns) { csv_row(columns); }

void Output::csv_row(const std::vector<std::string>& cells) {
  if (format_ != Format::Csv) return;
  preamble();
  for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
  os_ << "\n";
}

void Output::csv_note(const std::string& label, const json& value) {
  if (format_ != Format::Csv) return;
  preamble();
  os_ << "# " << label << ": " << value.dump() << "\n";
}

namespace {

// Integers become numbers; everything else (scalar specs, lists) stays text.
json typed(const std::string& v) {
  if (!v.empty() && v.size() < 20 && v.find_first_not_of("0123456789") == std::string::npos)
    return json(std::stoull(v));
  return json(v);
}

// Option values as given, with defaults, keyed by long name.
json echo(const CLI::App& app) {
  json out = json::object();
  for (const CLI::Option* opt : app.get_options()) {
    std::string name = opt->get_single_name();
    if (name == "help" || name.empty()) continue;
    if (opt->get_expected_min() == 0) {
      out[name] = opt->count() > 0;
    } else if (opt->count() > 0) {
      out[name] = typed(opt->as<std::string>());
    } else if (!opt->get_default_str().empty()) {
      out[name] = typed(opt->get_default_str());
    }
  }
  return out;
}

std::string one_line(std::string s) {
  for (char& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

int run(int argc, char** argv) {
  CLI::App app{"Experiments in metric Diophantine approximation", "dioph-cli"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "sampling seed");
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", g.out, "output path (default: stdout)");
  app.add_option("--precision", g.precision, "working precision in significant digits")
      ->check(CLI::Range(10u, 10000u));
  std::vector<Command> commands = register_commands(app, g);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << one_line(e.what()) << "\n";
    return 2;
  }

  const Command* cmd = nullptr;
  for (const auto& c : commands)
    if (c.app->parsed()) cmd = &c;

  try {
    Format format = cmd->default_format;
    if (g.format == "json") format = Format::Json;
    if (g.format == "csv") format = Format::Csv;
    dioph::require(format == Format::Json || cmd->csv_ok,
                   "--format csv is only available for commands that emit a curve");
    int digits = 17;
    if (g.precision) {
      dioph::set_decimal_digits(g.precision);
      digits = static_cast<int>(g.precision);
    }
    json config = echo(*cmd->app);
    config["seed"] = g.seed;
    config["format"] = format == Format::Json ? "json" : "csv";
    config["precision"] = digits;

    // Buffer so a failing run leaves no partial output behind.
    std::ostringstream buf;
    Output out(buf, format, cmd->app->get_name(), config, digits);
    cmd->run(out);
    if (g.out.empty()) {
      std::cout << buf.str();
    } else {
      std::ofstream f(g.out, std::ios::binary | std::ios::trunc);
      f << buf.str();
      if (!f) throw dioph::Error("cannot write " + g.out);
    }
    return 0;
  } catch (const dioph::InvalidArgument& e) {
    std::cerr << "invalid: " << one_line(e.what()) << "\n";
    return 2;
  } catch (const dioph::PrecisionExhausted& e) {
    std::cerr << "precision exhausted: " << one_line(e.what()) << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << one_line(e.what()) << "\n";
    return 1;
  }
}

}  // namespace
}  // namespace cli

int main(int argc, char** argv) { return cli::run(argc, argv); }
