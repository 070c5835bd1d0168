from wqa_lib.errors import *
from wqa_lib.mat2 import *
from wqa_lib.pwlmap import *
from wqa_lib.symbolicsequence import *
from wqa_lib.invariantsets import *
from wqa_lib.classifier import *
from wqa_lib.scanner import *
from wqa_lib.examples import *
from .config import RunConfig
