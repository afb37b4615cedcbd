// Command-line front end.  Subcommands are registered as the library grows;
// every run writes a manifest so results can be reproduced bit for bit.
#include <CLI11.hpp>

#include <cstdio>

#include "wslab/common.hpp"

int main(int argc, char** argv) {
    CLI::App app{"wave-Schrodinger laboratory"};
    app.require_subcommand(0, 1);

    int threads = 0;
    app.add_option("--threads", threads, "worker threads (0 = hardware)");

    CLI11_PARSE(app, argc, argv);
    if (threads > 0) wslab::set_worker_count(threads);

    if (app.get_subcommands().empty()) {
        std::puts(app.help().c_str());
        return 0;
    }
    return 0;
}
