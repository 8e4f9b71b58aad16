"""Celery 配置模块

配置 Celery 应用，验证任务的 broker、序列化、时限均从 Django settings 读取。
"""

import os
from celery import Celery

# 设置Django settings模块
os.environ.setdefault("DJANGO_SETTINGS_MODULE", "ratinf.settings")

app = Celery("ratinf")

# 从Django settings加载配置
app.config_from_object("django.conf:settings", namespace="CELERY")

# 自动发现任务
app.autodiscover_tasks()
