"""定理验证应用

导入检查定义模块以注册所有检查。
"""

from . import checks  # noqa: F401
