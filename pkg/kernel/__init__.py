from kernel.reduce import *
from kernel.typecheck import *
from kernel.signature import *
from kernel.diagnostics import *
