#include "stovex_cli/config.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <json.hpp>

#include "stovex/errors.hpp"
#include "stovex/parallel.hpp"

namespace stovex::cli {

namespace {

std::string scalar_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

}  // namespace

void apply_json_config(CLI::App& app, const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::IoError, "cannot read config " + path);
  nlohmann::json cfg;
  try {
    in >> cfg;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::InvalidArgument, "config " + path + ": " + e.what());
  }
  if (!cfg.is_object()) fail(Errc::InvalidArgument, "config " + path + " must be a JSON object");
  for (CLI::Option* opt : app.get_options()) {
    if (opt->count() > 0 || opt->get_lnames().empty()) continue;
    const auto it = cfg.find(opt->get_lnames().front());
    if (it == cfg.end()) continue;
    if (it->is_array()) {
      for (const auto& v : *it) opt->add_result(scalar_text(v));
    } else {
      opt->add_result(scalar_text(*it));
    }
    opt->run_callback();
  }
}

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("STOVEX_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    fail(Errc::InvalidArgument, std::string("STOVEX_THREADS is not a positive integer: ") + env);
  }
  return available_threads();
}

}  // namespace stovex::cli
