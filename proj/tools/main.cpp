#include "recipgrowth/cli.hpp"

int main(int argc, char** argv) {
    return recipgrowth::cli_main(argc, argv);
}
