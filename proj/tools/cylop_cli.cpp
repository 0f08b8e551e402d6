#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "cylop/commands.hpp"

using namespace cylop;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kInputError = 2 };

struct Options {
  std::string cooperad;
  int cap = -1;
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 1;
};

std::optional<Json> optional_file(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return read_json_file(path);
}

int emit(const Options& o, const CommandResult& out) {
  const std::string body = o.format == "text" ? out.text : out.json.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(o.out);
    if (!f) {
      std::cerr << "error: cannot write '" << o.out << "'\n";
      return kInputError;
    }
    f << body;
  }
  return out.ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in cobar and cylinder operads of finite cooperads"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--cap", o.cap, "Truncate the cooperad to arities <= cap");
  app.add_option("--out", o.out, "Write the result to this file");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", o.seed, "Seed for randomly drawn derivations");

  auto* validate_cmd = app.add_subcommand("validate", "Cooperad axioms and d^2 = 0 up to the cap");
  validate_cmd->add_option("cooperad", o.cooperad, "Builtin name:cap or cooperad JSON file")->required();

  int arity = 0;
  bool weight0 = false;
  auto* coh_cmd = app.add_subcommand("cohomology", "Cohomology ranks of Cobar(C)(n) and Cyl(C)(n,0;beta)");
  coh_cmd->add_option("cooperad", o.cooperad, "Builtin name:cap or cooperad JSON file")->required();
  coh_cmd->add_option("n", arity, "Arity")->required();
  coh_cmd->add_flag("--weight0", weight0, "Use the weight-preserving differential");

  std::string der_path, triple_path, element_path;
  auto* lift_cmd = app.add_subcommand("lift", "Lift a closed degree-0 Der' derivation of Cobar(C) to Cyl(C)");
  lift_cmd->add_option("cooperad", o.cooperad, "Builtin name:cap or cooperad JSON file")->required();
  lift_cmd->add_option("derivation", der_path, "Derivation JSON (omitted: drawn with --seed)");

  auto* transport_cmd = app.add_subcommand("transport", "Transport a triple along a Der' derivation");
  transport_cmd->add_option("cooperad", o.cooperad, "Builtin name:cap or cooperad JSON file")->required();
  transport_cmd->add_option("triple", triple_path, "Cyl(C)-algebra JSON encoding (V, W, U)")->required();
  transport_cmd->add_option("derivation", der_path, "Derivation JSON (omitted: drawn with --seed)");

  auto* mc_cmd = app.add_subcommand("mc-check", "Maurer-Cartan check in a convolution algebra");
  mc_cmd->add_option("cooperad", o.cooperad, "Builtin name:cap or cooperad JSON file")->required();
  mc_cmd->add_option("element", element_path, "Convolution element or structure JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    const Cooperad C = load_truncated(o.cooperad, o.cap);
    if (*validate_cmd) return emit(o, run_validate(C));
    if (*coh_cmd) return emit(o, run_cohomology(C, arity, weight0));
    if (*lift_cmd) return emit(o, run_lift(C, optional_file(der_path), o.seed));
    if (*transport_cmd) return emit(o, run_transport(C, read_json_file(triple_path), optional_file(der_path), o.seed));
    if (*mc_cmd) return emit(o, run_mc_check(C, read_json_file(element_path)));
  } catch (const InvalidInput& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const LiftFailure& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const Json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
