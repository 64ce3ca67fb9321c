#include "enrich/cli.hpp"

int main(int argc, char** argv) { return enrich::run_cli(argc, argv); }
