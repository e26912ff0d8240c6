#include "cli_app.hpp"

int main(int argc, char** argv) { return wgtk::cli::run_main(argc, argv); }
