#include "edss/cli.hpp"

int main(int argc, char** argv) { return edss::run_cli(argc, argv); }
