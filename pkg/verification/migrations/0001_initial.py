from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='VerificationRun',
            fields=[
                ('id', models.BigAutoField(primary_key=True, serialize=False)),
                ('celery_task_id', models.CharField(blank=True, db_index=True, default='', max_length=255, verbose_name='Celery任务ID')),
                ('atoms', models.PositiveSmallIntegerField(verbose_name='原子数')),
                ('trials', models.PositiveIntegerField(verbose_name='试验次数')),
                ('seed', models.BigIntegerField(verbose_name='主种子')),
                ('checks', models.TextField(default='[]', verbose_name='检查列表')),
                ('state', models.CharField(choices=[('PENDING', '等待执行'), ('RUNNING', '正在执行'), ('FINISHED', '已完成'), ('FAILED', '执行失败')], db_index=True, default='PENDING', max_length=20, verbose_name='运行状态')),
                ('report', models.TextField(blank=True, null=True, verbose_name='验证报告')),
                ('failure_count', models.PositiveIntegerField(default=0, verbose_name='失败项数')),
                ('create_at', models.DateTimeField(auto_now_add=True, db_index=True, verbose_name='创建时间')),
                ('start_at', models.DateTimeField(blank=True, null=True, verbose_name='开始执行时间')),
                ('finish_at', models.DateTimeField(blank=True, null=True, verbose_name='完成时间')),
                ('error_message', models.TextField(blank=True, null=True, verbose_name='错误信息')),
            ],
            options={
                'verbose_name': '验证运行',
                'verbose_name_plural': '验证运行',
                'db_table': 'verification_run',
                'ordering': ['-create_at'],
                'indexes': [models.Index(fields=['state', 'create_at'], name='verification_state_idx')],
            },
        ),
    ]
