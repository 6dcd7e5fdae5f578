#include "sectorflow/cli.hpp"

int main(int argc, char** argv) {
    return sectorflow::run_cli({argv + 1, argv + argc});
}
