#pragma once

#include <string>

namespace CLI {
class App;
}

namespace stovex::cli {

// Fills options of `app` that were not given on the command line from the
// flat JSON object in `path`; keys are long option names without dashes.
// Keys that name no option of `app` are ignored. Throws IoError on an
// unreadable file and InvalidArgument on malformed JSON.
void apply_json_config(CLI::App& app, const std::string& path);

// --threads when positive, else STOVEX_THREADS, else hardware concurrency.
int resolve_threads(int flag);

}  // namespace stovex::cli
