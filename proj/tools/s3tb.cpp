#include "s3tb/cli/commands.hpp"

int main(int argc, char** argv) { return s3tb::cli::run(argc, argv); }
