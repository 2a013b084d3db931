#include <prank/cli.hpp>

int main(int argc, char** argv) { return prank::cli::dispatch(argc, argv); }
