#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "dioph/scalar.hpp"

namespace cli {

using json = nlohmann::json;

inline constexpr const char* kSchema = "dioph-cli/1";
inline constexpr std::uint64_t kDefaultSeed = 20240601;

enum class Format { Json, Csv };

// Writes JSON lines, or a CSV curve preceded by '#' comment lines holding the
// schema and the config echo.
class Output {
 public:
  Output(std::ostream& os, Format format, std::string command, json config, int digits);

  Format format() const { return format_; }
  int digits() const { return digits_; }

  void record(const std::string& kind, json fields);
  void csv_header(const std::vector<std::string>& columns);
  void csv_row(const std::vector<std::string>& cells);
  // A JSON object as a '#' line, for summaries that accompany a CSV curve.
  void csv_note(const std::string& label, const json& value);

 private:
  void preamble();

  std::ostream& os_;
  Format format_;
  std::string command_;
  json config_;
  int digits_;
  bool started_ = false;
};

struct Globals {
  std::uint64_t seed = kDefaultSeed;
  std::string format;  // empty: the command's default
  std::string out;
  unsigned precision = 0;  // 0: library default working precision, 17 printed digits
};

// A subcommand registers its options and returns the action run after parsing.
using Action = std::function<void(Output&)>;

struct Command {
  CLI::App* app = nullptr;
  Action run;
  Format default_format = Format::Json;
  bool csv_ok = false;
};

// Registration for every subcommand; `g` is filled in by the time actions run.
std::vector<Command> register_commands(CLI::App& app, const Globals& g);

// Helpers shared by the commands.
json scalar_json(const dioph::Scalar& s, int digits);
json bigint_json(const dioph::BigInt& x);
std::vector<dioph::Scalar> parse_alpha(const std::string& text);
std::vector<std::uint64_t> parse_u64_list(const std::string& text, const std::string& what);
std::uint64_t parse_u64(const std::string& text, const std::string& what);

}  // namespace cli
