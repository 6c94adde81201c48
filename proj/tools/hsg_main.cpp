// Pipeline CLI. Subcommands are wired up in pipeline.cpp; this main only
// parses arguments and maps errors to exit codes.

#include <cstdio>

int main() {
    std::puts("hsg: placeholder");
    return 0;
}
