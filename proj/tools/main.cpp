#include "uxlens/cli.hpp"

int main(int argc, char** argv) {
    return uxlens::cli_main(argc, argv);
}
