#include "commands.hpp"

int main(int argc, char** argv) { return mri::cli::run_main(argc, argv); }
