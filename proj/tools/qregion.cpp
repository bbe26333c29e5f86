#include "qregion/cli.hpp"

int main(int argc, char** argv) { return qregion::run_cli(argc, argv); }
