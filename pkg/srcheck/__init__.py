from srcheck.constraints import *
from srcheck.completion import *
from srcheck.postponement import *
from srcheck.checker import *
