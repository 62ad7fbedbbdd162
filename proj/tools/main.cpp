#include "gvlab/cli.hpp"

int main(int argc, char** argv) { return gvlab::run_cli(argc, argv); }
