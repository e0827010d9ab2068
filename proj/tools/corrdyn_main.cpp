#include "corrdyn/cli.hpp"

int main(int argc, char** argv) { return corrdyn::run(argc, argv); }
