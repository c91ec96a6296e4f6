# Tests package for pywfa
