#include "landscape/io/cli.hpp"

int main(int argc, char** argv) { return landscape::io::run_cli(argc, argv); }
