#include "ektau/cli.hpp"

int main(int argc, char** argv) { return ektau::run_cli(argc, argv); }
