#include "lesionroi/cli.hpp"

int main(int argc, char** argv) {
    return lesionroi::cli::run(argc, argv);
}
