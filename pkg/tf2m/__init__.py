# Make this a module
