"""有理推理关系应用

命题逻辑核心、有理序、(C)/(O) 对应、秩序后承算子与优先默认库。
"""
