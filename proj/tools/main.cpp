#include "mcdeck/cli.hpp"

int main(int argc, char** argv) { return mcdeck::run_cli(argc, argv); }
